"""Directed intervals of a digraph.

The interval [x, y] is the set of vertices lying on some singular path
from x to y: a walk in which the endpoints x and y occur exactly once
(interior vertices may repeat). [x, x] is defined as the strong
component of x. Nonempty intervals always contain both endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

from autoint.core import Digraph, connectivity


def _forward(d: Digraph, x: int, y: int, banned: int = -1) -> set[int]:
    # Vertices reachable from x by walks that never re-enter x, never
    # touch y, and avoid `banned`. Includes x itself.
    seen = {x}
    stack = [x]
    succ = d.succ
    while stack:
        for u in succ[stack.pop()]:
            if u == x or u == y or u == banned or u in seen:
                continue
            seen.add(u)
            stack.append(u)
    return seen


def _backward(d: Digraph, x: int, y: int, banned: int = -1) -> set[int]:
    # Vertices that reach y by walks that never leave y again, never
    # touch x, and avoid `banned`. Includes y itself.
    seen = {y}
    stack = [y]
    pred = d.pred
    while stack:
        for u in pred[stack.pop()]:
            if u == x or u == y or u == banned or u in seen:
                continue
            seen.add(u)
            stack.append(u)
    return seen


def _singular_path_exists(d: Digraph, x: int, y: int, banned: int = -1) -> bool:
    """Is there a singular path from x to y avoiding `banned`? (x != y)"""
    fwd = _forward(d, x, y, banned)
    edges = d.edges
    return any((s, y) in edges for s in fwd)


def interval(d: Digraph, x: int, y: int) -> frozenset[int]:
    """The directed interval [x, y]; empty iff no singular path exists.

    A vertex z is interior to [x, y] exactly when some walk runs
    x -> z -> y whose first part never re-enters x or touches y and
    whose second part never touches x or leaves y; gluing the parts
    gives a singular path, and cutting a singular path at z gives the
    parts back.
    """
    if not (0 <= x < d.n and 0 <= y < d.n):
        raise ValueError(f"vertices must lie in 0..{d.n - 1}")
    if x == y:
        scc = connectivity(d).scc
        return scc.blocks[scc.block_of[x]]
    fwd = _forward(d, x, y)
    edges = d.edges
    if not any((s, y) in edges for s in fwd):
        return frozenset()
    return frozenset({x, y}) | (fwd & _backward(d, x, y))


@dataclass(frozen=True)
class IntervalTable:
    """All n*n interval cells of one digraph, indexed cells[x][y]."""

    n: int
    cells: tuple[tuple[frozenset[int], ...], ...]

    def cell(self, x: int, y: int) -> frozenset[int]:
        return self.cells[x][y]


def interval_table(d: Digraph) -> IntervalTable:
    conn = connectivity(d)
    scc = conn.scc
    rows = []
    for x in range(d.n):
        row = []
        for y in range(d.n):
            if x == y:
                row.append(scc.blocks[scc.block_of[x]])
            else:
                row.append(interval(d, x, y))
        rows.append(tuple(row))
    return IntervalTable(d.n, tuple(rows))


def check_points(d: Digraph) -> frozenset[tuple[frozenset[int], int]]:
    """All pairs ({x, y}, z) where z blocks every path between x and y.

    z is a check-point for the pair {x, y} (all three distinct, in one
    strong component) when every singular path from x to y passes
    through z and so does every singular path from y to x.
    """
    conn = connectivity(d)
    found = set()
    for block in conn.scc.blocks:
        if len(block) < 3:
            continue
        verts = sorted(block)
        for i, x in enumerate(verts):
            for y in verts[i + 1 :]:
                for z in verts:
                    if z == x or z == y:
                        continue
                    if not _singular_path_exists(
                        d, x, y, banned=z
                    ) and not _singular_path_exists(d, y, x, banned=z):
                        found.add((frozenset({x, y}), z))
    return frozenset(found)


def is_scc_dense(d: Digraph) -> tuple[bool, tuple[int, int, int] | None]:
    """Whether every strong component is interval-dense.

    Dense means: for all x != y in a common strong component, every z of
    that component lies in [x, y] or in [y, x]. Returns the first
    witness (x, y, z) in ascending scan order when density fails.
    Equivalent to the absence of check-points.
    """
    conn = connectivity(d)
    for block in conn.scc.blocks:
        if len(block) < 3:
            continue
        verts = sorted(block)
        for i, x in enumerate(verts):
            for y in verts[i + 1 :]:
                u = interval(d, x, y) | interval(d, y, x)
                for z in verts:
                    if z not in u:
                        return False, (x, y, z)
    return True, None
