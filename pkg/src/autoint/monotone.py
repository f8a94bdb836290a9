"""Stable orders on states and the induced reduction level.

A relation is stable when the automaton's letters preserve it. The
stable closure of a seed pair is the least stable preorder containing
it; antisymmetric closures are stable partial orders, and the weak
components of such an order form a congruence. Repeatedly quotienting
by one of these orders measures how many order-reduction steps bring
the automaton down to a single state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from autoint.core import (
    Automaton,
    Digraph,
    connectivity,
    is_congruence,
    quotient_automaton,
)


@dataclass(frozen=True)
class Relation:
    n: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "pairs", frozenset((int(p), int(q)) for p, q in self.pairs)
        )
        for p, q in self.pairs:
            if not (0 <= p < self.n and 0 <= q < self.n):
                raise ValueError(f"pair ({p}, {q}) out of range 0..{self.n - 1}")

    def is_antisymmetric(self) -> bool:
        return not any(p != q and (q, p) in self.pairs for p, q in self.pairs)

    def covering_digraph(self) -> Digraph:
        """The relation minus its diagonal, as a digraph."""
        return Digraph(self.n, frozenset((p, q) for p, q in self.pairs if p != q))


def stable_closure(a: Automaton, seed: Iterable[tuple[int, int]]) -> Relation:
    """Least reflexive, transitive, letter-closed relation containing seed."""
    n = a.n
    fwd: list[set[int]] = [set() for _ in range(n)]
    bwd: list[set[int]] = [set() for _ in range(n)]
    work: deque[tuple[int, int]] = deque()

    def add(p: int, q: int) -> None:
        if q not in fwd[p]:
            fwd[p].add(q)
            bwd[q].add(p)
            work.append((p, q))

    for p in range(n):
        add(p, p)
    for p, q in seed:
        if not (0 <= p < n and 0 <= q < n):
            raise ValueError(f"seed pair ({p}, {q}) out of range")
        add(p, q)
    delta = a.delta
    while work:
        p, q = work.popleft()
        for x in range(a.k):
            add(delta[p][x], delta[q][x])
        for r in fwd[q] - fwd[p]:
            add(p, r)
        for r in [r for r in bwd[p] if q not in fwd[r]]:
            add(r, q)
    return Relation(n, frozenset((p, q) for p in range(n) for q in fwd[p]))


def find_stable_partial_orders(a: Automaton) -> tuple[Relation, ...]:
    """All distinct antisymmetric single-pair stable closures.

    Each nontrivial stable partial order the automaton preserves
    contains one of these, so they are the cheapest certificates that
    some order-based reduction applies. Enumeration order is fixed by
    ascending seed pairs.
    """
    out: list[Relation] = []
    seen: set[frozenset[tuple[int, int]]] = set()
    for p in range(a.n):
        for q in range(a.n):
            if p == q:
                continue
            rel = stable_closure(a, [(p, q)])
            if rel.pairs in seen:
                continue
            seen.add(rel.pairs)
            if rel.is_antisymmetric():
                out.append(rel)
    return tuple(out)


def _canon_key(a: Automaton) -> tuple:
    # Strongly connected tables are canonicalized by the best BFS
    # relabeling, so isomorphic quotients share one memo entry.
    n, k = a.n, a.k
    d = a.delta
    edges = frozenset((q, t) for q, row in enumerate(d) for t in row)
    if len(connectivity(Digraph(n, edges)).scc) != 1:
        return (k, tuple(t for row in d for t in row))
    best: tuple[int, ...] | None = None
    for s in range(n):
        order = [s]
        newid = {s: 0}
        for q in order:
            for x in range(k):
                t = d[q][x]
                if t not in newid:
                    newid[t] = len(order)
                    order.append(t)
        flat = tuple(newid[d[q][x]] for q in order for x in range(k))
        if best is None or flat < best:
            best = flat
    return (k, best)


def wm_level(a: Automaton, max_level: int) -> int | None:
    """Least number of order-reduction steps reaching one state, if any.

    Level 0 means the automaton already has a single state. A positive
    level L certifies a chain of L stable-partial-order quotients ending
    in one state; only single-pair closures are tried as certificates,
    so the value is an upper-bound witness, and None means no chain of
    length <= max_level was found.
    """
    if max_level < 0:
        raise ValueError("max_level must be nonnegative")
    memo: dict[tuple, int | None] = {}

    def rec(m: Automaton, budget: int) -> int | None:
        if m.n == 1:
            return 0
        if budget == 0:
            return None
        key = (_canon_key(m), budget)
        if key in memo:
            return memo[key]
        best: int | None = None
        for rel in find_stable_partial_orders(m):
            wcc = connectivity(rel.covering_digraph()).wcc
            if len(wcc) == m.n:
                continue
            ok, _ = is_congruence(m, wcc)
            assert ok  # weak components of a stable relation always commute
            mq, _ = quotient_automaton(m, wcc)
            sub = rec(mq, budget - 1)
            if sub is not None and (best is None or sub + 1 < best):
                best = sub + 1
                if best == 1:
                    break
        memo[key] = best
        return best

    return rec(a, max_level)
