"""Independent reference implementations used to cross-check the library.

Everything here recomputes a quantity from its definition with a
different algorithm and different data layout than the package uses, so
agreement is meaningful. Nothing imports from autoint except the plain
data containers.
"""

from __future__ import annotations

import itertools
from collections import deque

from autoint.core import Automaton, Digraph


def interval_by_walks(d: Digraph, x: int, y: int) -> frozenset[int]:
    """Vertices on x->y walks of length <= 2n-2 where x and y occur once.

    Literal depth-first enumeration of walks (interior vertices may
    repeat), so it is exponential and only usable for tiny digraphs.
    Any vertex of the interval sits on such a walk: a shortest punctured
    route in and a shortest punctured route out are each at most n-1
    edges.
    """
    if x == y:
        raise ValueError("walk enumeration is for distinct endpoints")
    n = d.n
    limit = 2 * n - 2
    out: set[int] = set()
    stack: list[tuple[int, tuple[int, ...]]] = [(x, (x,))]
    while stack:
        v, walk = stack.pop()
        if len(walk) - 1 >= limit:
            continue
        for u in d.succ[v]:
            if u == x:
                continue
            if u == y:
                out.update(walk)
                out.add(y)
            else:
                stack.append((u, walk + (u,)))
    return frozenset(out)


def _mask_layers(adj: list[int], start: int, forbid: int, rounds: int) -> int:
    """Union of states hit in 1..rounds steps from start, masked by ~forbid."""
    seen = 0
    cur = 1 << start
    for _ in range(rounds):
        nxt = 0
        m = cur
        while m:
            low = m & -m
            nxt |= adj[low.bit_length() - 1]
            m ^= low
        cur = nxt & ~forbid & ~seen
        seen |= cur
    return seen


def interval_by_layers(d: Digraph, x: int, y: int) -> frozenset[int]:
    """Bounded-walk interval via bitmask layer expansion (x != y).

    Walks of length up to n-1 on each side suffice, so the interior is
    the meet of n-1 forward layers from x (never re-entering x, never
    touching y) and n-1 backward layers into y.
    """
    n = d.n
    adj = [0] * n
    radj = [0] * n
    for u, v in d.edges:
        adj[u] |= 1 << v
        radj[v] |= 1 << u
    forbid = (1 << x) | (1 << y)
    fwd = _mask_layers(adj, x, forbid, n - 1)
    if not any(adj[v] >> y & 1 for v in _bits(fwd | (1 << x))):
        return frozenset()
    bwd = _mask_layers(radj, y, forbid, n - 1)
    return frozenset({x, y} | set(_bits(fwd & bwd)))


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def reach_closure(d: Digraph) -> list[list[bool]]:
    """Reflexive-transitive reachability by Floyd-Warshall on booleans."""
    n = d.n
    r = [[i == j for j in range(n)] for i in range(n)]
    for u, v in d.edges:
        r[u][v] = True
    for k in range(n):
        rk = r[k]
        for i in range(n):
            if r[i][k]:
                ri = r[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return r


def scc_by_closure(d: Digraph) -> list[frozenset[int]]:
    """Strong components as mutual-reachability classes, least element first."""
    r = reach_closure(d)
    n = d.n
    done: set[int] = set()
    blocks = []
    for i in range(n):
        if i in done:
            continue
        blk = frozenset(j for j in range(n) if r[i][j] and r[j][i])
        done |= blk
        blocks.append(blk)
    return blocks


def scc_block_of(d: Digraph, v: int) -> frozenset[int]:
    for blk in scc_by_closure(d):
        if v in blk:
            return blk
    raise AssertionError


def shortest_reset_by_sets(a: Automaton) -> tuple[int, ...] | None:
    """Shortest reset word by BFS over frozensets (no bitmask tricks)."""
    full = frozenset(range(a.n))
    if len(full) == 1:
        return ()
    prev: dict[frozenset[int], tuple[frozenset[int], int] | None] = {full: None}
    queue: deque[frozenset[int]] = deque([full])
    while queue:
        s = queue.popleft()
        for x in range(a.k):
            t = frozenset(a.delta[q][x] for q in s)
            if t in prev:
                continue
            prev[t] = (s, x)
            if len(t) == 1:
                word: list[int] = []
                cur: frozenset[int] | None = t
                while prev[cur] is not None:
                    cur, lx = prev[cur]  # type: ignore[misc]
                    word.append(lx)
                return tuple(reversed(word))
            queue.append(t)
    return None


def all_digraphs(n: int):
    """Every digraph on n labeled vertices, one per subset of n*n arcs."""
    slots = [(u, v) for u in range(n) for v in range(n)]
    for code in range(1 << (n * n)):
        edges = frozenset(slots[i] for i in range(n * n) if code >> i & 1)
        yield Digraph(n, edges)


def all_automata(n: int, k: int):
    names = tuple("abcdefghijklmnopqrstuvwxyz"[:k])
    for flat in itertools.product(range(n), repeat=n * k):
        yield Automaton(names, tuple(flat[q * k : (q + 1) * k] for q in range(n)))
