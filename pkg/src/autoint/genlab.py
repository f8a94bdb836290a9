"""Instance generators: classic series, structured families, enumeration.

Generators that promise structural properties re-check them on the
built instance and fail loudly rather than return something off-spec.
All randomness flows through an explicit seed.
"""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from typing import Iterator, Sequence

from autoint.core import (
    Automaton,
    Digraph,
    connectivity,
    is_strongly_connected,
    transition_digraph,
)
from autoint.intervals import is_scc_dense
from autoint.monotone import find_stable_partial_orders
from autoint.respect import check_letter_conditions, is_unique_return_paths
from autoint.synchro import is_synchronizing

_MAX_TRIES = 5000


def _names(k: int) -> tuple[str, ...]:
    if not 1 <= k <= 26:
        raise ValueError("letter count must be between 1 and 26")
    return tuple(string.ascii_lowercase[:k])


def gen_cerny(n: int) -> Automaton:
    """The classic two-letter series with shortest reset length (n-1)^2.

    Letter a rotates the cycle, letter b nudges state 0 to 1 and fixes
    the rest.
    """
    if n < 1:
        raise ValueError("need at least one state")
    if n == 1:
        return Automaton(("a", "b"), ((0, 0),))
    delta = tuple(
        ((q + 1) % n, 1 if q == 0 else q) for q in range(n)
    )
    return Automaton(("a", "b"), delta)


def is_cyclic_orientation_preserving(values: Sequence[int], n: int) -> bool:
    """Whether a state map winds the n-cycle around itself at most once.

    Summing the cyclic gaps of consecutive images gives 0 exactly for
    constant maps and n exactly when the image sequence is cyclically
    nondecreasing with one full turn; anything larger reverses or folds
    the cyclic order somewhere.
    """
    if len(values) != n:
        raise ValueError("need one image per cycle vertex")
    if n == 1:
        return True
    total = sum((values[(i + 1) % n] - values[i]) % n for i in range(n))
    return total in (0, n)


def _cyclic_monotone_row(rng: random.Random, length: int, target: int) -> tuple[int, ...]:
    # A random rotation of a sorted multiset, applied from a random
    # domain offset: exactly the maps winding the target cycle <= once.
    vals = sorted(rng.randrange(target) for _ in range(length))
    t = rng.randrange(length)
    vals = vals[t:] + vals[:t]
    r = rng.randrange(length)
    row = [0] * length
    for i in range(length):
        row[(i + r) % length] = vals[i]
    return tuple(row)


def gen_orientable(n: int, k_letters: int, seed: int) -> tuple[Automaton, Digraph]:
    """A strongly connected automaton respecting a simple n-cycle.

    Letters are sampled from the cyclic-order-preserving maps, which are
    exactly the maps compatible with the cycle's intervals; the
    conditions are re-checked on the result.
    """
    if n < 1:
        raise ValueError("need at least one state")
    names = _names(k_letters)
    d = Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))
    rng = random.Random(seed)
    for _ in range(_MAX_TRIES):
        rows = [_cyclic_monotone_row(rng, n, n) for _ in range(k_letters)]
        assert all(is_cyclic_orientation_preserving(r, n) for r in rows)
        a = Automaton(names, tuple(tuple(r[q] for r in rows) for q in range(n)))
        if not is_strongly_connected(transition_digraph(a)):
            continue
        rep = check_letter_conditions(a, d)
        assert rep.ok, rep.violations[0]
        return a, d
    raise RuntimeError(
        f"no strongly connected sample in {_MAX_TRIES} tries (n={n}, k={k_letters})"
    )


@dataclass(frozen=True)
class UrpSpec:
    """Shape of a disjoint-cycles-plus-DAG digraph.

    cycle_sizes lists the strong components (simple cycles laid out
    consecutively from state 0); dag_edges connect cycle indices and
    must be acyclic.
    """

    cycle_sizes: tuple[int, ...]
    dag_edges: tuple[tuple[int, int], ...]
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycle_sizes", tuple(int(s) for s in self.cycle_sizes))
        object.__setattr__(
            self,
            "dag_edges",
            tuple(sorted({(int(u), int(v)) for u, v in self.dag_edges})),
        )
        if not self.cycle_sizes or any(s < 1 for s in self.cycle_sizes):
            raise ValueError("cycle sizes must be positive")
        c = len(self.cycle_sizes)
        for u, v in self.dag_edges:
            if not (0 <= u < c and 0 <= v < c):
                raise ValueError(f"dag edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError("dag edges may not be loops")
        # Kahn's check: the cycle-level edges must form a DAG
        indeg = [0] * c
        for _, v in self.dag_edges:
            indeg[v] += 1
        queue = [i for i in range(c) if indeg[i] == 0]
        seen = 0
        while queue:
            u = queue.pop()
            seen += 1
            for uu, v in self.dag_edges:
                if uu == u:
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        queue.append(v)
        if seen != c:
            raise ValueError("dag_edges contain a directed cycle")


def _cycle_reach(c: int, dag_edges) -> list[set[int]]:
    reach = [{i} for i in range(c)]
    changed = True
    while changed:
        changed = False
        for u, v in dag_edges:
            add = reach[v] - reach[u]
            if add:
                reach[u] |= add
                changed = True
    return reach


def gen_unique_return(spec: UrpSpec, k_letters: int) -> tuple[Automaton, Digraph]:
    """A strongly connected automaton respecting a cycles-plus-DAG digraph.

    The digraph's strong components are simple cycles, so it passes the
    unique-return check and is scc-dense. Each letter sends cycles to
    cycles compatibly with reachability and acts on each cycle by an
    orientation-preserving map, which is enough for the interval
    conditions; everything is re-checked before returning.
    """
    names = _names(k_letters)
    sizes = spec.cycle_sizes
    c = len(sizes)
    offs = [0] * c
    for i in range(1, c):
        offs[i] = offs[i - 1] + sizes[i - 1]
    n = sum(sizes)
    rng = random.Random(spec.seed)
    edges = set()
    for ci, s in enumerate(sizes):
        for i in range(s):
            edges.add((offs[ci] + i, offs[ci] + (i + 1) % s))
    for u, v in spec.dag_edges:
        edges.add((offs[u] + rng.randrange(sizes[u]), offs[v] + rng.randrange(sizes[v])))
    d = Digraph(n, frozenset(edges))
    reach = _cycle_reach(c, spec.dag_edges)
    reach_pairs = [(i, j) for i in range(c) for j in reach[i] if i != j]

    def sample_cycle_map() -> tuple[int, ...]:
        for _ in range(_MAX_TRIES):
            t = tuple(rng.randrange(c) for _ in range(c))
            if all(t[j] in reach[t[i]] for i, j in reach_pairs):
                return t
        # a constant map is always compatible
        return (rng.randrange(c),) * c

    for _ in range(_MAX_TRIES):
        rows = []
        for _ in range(k_letters):
            t = sample_cycle_map()
            row = [0] * n
            for ci in range(c):
                g = _cyclic_monotone_row(rng, sizes[ci], sizes[t[ci]])
                for i in range(sizes[ci]):
                    row[offs[ci] + i] = offs[t[ci]] + g[i]
            rows.append(row)
        a = Automaton(names, tuple(tuple(r[q] for r in rows) for q in range(n)))
        if not is_strongly_connected(transition_digraph(a)):
            continue
        ok, wit = is_unique_return_paths(d)
        assert ok, wit
        dense, dwit = is_scc_dense(d)
        assert dense, dwit
        rep = check_letter_conditions(a, d)
        assert rep.ok, rep.violations[0]
        return a, d
    raise RuntimeError(
        f"no strongly connected sample in {_MAX_TRIES} tries for {spec}"
    )


def gen_monotonic(n: int, k_letters: int, seed: int) -> Automaton:
    """An automaton whose letters are nondecreasing on the state order.

    Resamples until some single-pair stable closure is a partial order
    whose nontrivial part connects all states weakly, so one
    order-reduction step provably collapses it to a single state.
    """
    if n < 1:
        raise ValueError("need at least one state")
    names = _names(k_letters)
    if n == 1:
        return Automaton(names, ((0,) * k_letters,))
    rng = random.Random(seed)
    for _ in range(_MAX_TRIES):
        rows = [tuple(sorted(rng.choices(range(n), k=n))) for _ in range(k_letters)]
        a = Automaton(names, tuple(tuple(r[q] for r in rows) for q in range(n)))
        for rel in find_stable_partial_orders(a):
            wcc = connectivity(rel.covering_digraph()).wcc
            if len(wcc) == 1:
                return a
    raise RuntimeError(
        f"no monotone sample with a spanning stable order in {_MAX_TRIES} tries"
    )


def gen_random(n: int, k_letters: int, seed: int) -> Automaton:
    """A uniformly random complete transition table."""
    if n < 1:
        raise ValueError("need at least one state")
    rng = random.Random(seed)
    delta = tuple(
        tuple(rng.randrange(n) for _ in range(k_letters)) for _ in range(n)
    )
    return Automaton(_names(k_letters), delta)


def enumerate_automata(
    n: int,
    k: int,
    *,
    strongly_connected: bool = False,
    synchronizing: bool = False,
    max_count: int = 20_000_000,
) -> Iterator[Automaton]:
    """All n-state k-letter transition tables in lexicographic order.

    The flattened table (state-major, letter-minor) runs through all
    n^(n*k) digit vectors like an odometer. Optional filters keep only
    strongly connected or synchronizing automata. Refuses spaces larger
    than max_count.
    """
    if n < 1:
        raise ValueError("need at least one state")
    names = _names(k)
    total = n ** (n * k)
    if total > max_count:
        raise ValueError(
            f"space of size {n}^{n * k} = {total} exceeds max_count={max_count}"
        )
    for flat in itertools.product(range(n), repeat=n * k):
        a = Automaton(names, tuple(flat[q * k : (q + 1) * k] for q in range(n)))
        if strongly_connected and not is_strongly_connected(transition_digraph(a)):
            continue
        if synchronizing and not is_synchronizing(a):
            continue
        yield a
