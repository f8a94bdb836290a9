"""Complete deterministic automata and digraphs on states 0..n-1.

Everything downstream builds on the vocabulary here: words act on states
on the right, partitions are canonical (blocks ordered by least element),
and connectivity structure (strong/weak components plus the component
DAG) is computed once and reused.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

Word = tuple[int, ...]
# A word is a tuple of letter indices; () is the empty word.


@dataclass(frozen=True)
class Automaton:
    """A complete DFA given by its action only: no initial or final states.

    `delta[q][a]` is the state reached from `q` under letter index `a`.
    Rows must be complete and every target must be a valid state.
    """

    letters: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(
            self, "delta", tuple(tuple(int(t) for t in row) for row in self.delta)
        )
        n, k = len(self.delta), len(self.letters)
        if n < 1:
            raise ValueError("automaton needs at least one state")
        if k < 1:
            raise ValueError("automaton needs at least one letter")
        if len(set(self.letters)) != k:
            raise ValueError("letter names must be distinct")
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"state {q}: expected {k} transitions, got {len(row)}")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"state {q}: target {t} out of range 0..{n - 1}")

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def k(self) -> int:
        return len(self.letters)

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def letter_index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise ValueError(f"unknown letter {name!r}") from None

    def to_json_dict(self) -> dict:
        return {"letters": list(self.letters), "delta": [list(r) for r in self.delta]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Automaton":
        if not isinstance(data, dict) or "letters" not in data or "delta" not in data:
            raise ValueError('automaton JSON needs "letters" and "delta" keys')
        letters, delta = data["letters"], data["delta"]
        if not isinstance(letters, (list, tuple)) or not all(
            isinstance(s, str) for s in letters
        ):
            raise ValueError('"letters" must be a list of strings')
        if not isinstance(delta, (list, tuple)):
            raise ValueError('"delta" must be a list of transition rows')
        try:
            rows = tuple(tuple(int(t) for t in row) for row in delta)
        except (TypeError, ValueError):
            raise ValueError('"delta" rows must be lists of integers') from None
        return cls(tuple(letters), rows)


@dataclass(frozen=True)
class Digraph:
    """A finite digraph on vertices 0..n-1; loops allowed, no parallel edges."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "edges", frozenset((int(u), int(v)) for u, v in self.edges)
        )
        if self.n < 1:
            raise ValueError("digraph needs at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range 0..{self.n - 1}")

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(vs)) for vs in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            inc[v].append(u)
        return tuple(tuple(sorted(us)) for us in inc)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": sorted([u, v] for u, v in self.edges)}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Digraph":
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise ValueError('digraph JSON needs "n" and "edges" keys')
        try:
            n = int(data["n"])
            edges = frozenset((int(u), int(v)) for u, v in data["edges"])
        except (TypeError, ValueError):
            raise ValueError('"edges" must be a list of [u, v] pairs') from None
        return cls(n, edges)


@dataclass(frozen=True)
class Partition:
    """A partition of 0..n-1 in canonical form: blocks ordered by least element."""

    n: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        blocks = tuple(
            sorted((frozenset(b) for b in self.blocks), key=lambda b: min(b))
        )
        object.__setattr__(self, "blocks", blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(self.n)):
            raise ValueError(f"blocks do not cover 0..{self.n - 1}")

    @cached_property
    def block_of(self) -> tuple[int, ...]:
        idx = [0] * self.n
        for i, b in enumerate(self.blocks):
            for q in b:
                idx[q] = i
        return tuple(idx)

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, tuple(frozenset([q]) for q in range(n)))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls(n, (frozenset(range(n)),))

    @classmethod
    def from_assignment(cls, labels: Sequence[int]) -> "Partition":
        """Group states by label; labels are arbitrary hashables."""
        groups: dict = {}
        for q, lab in enumerate(labels):
            groups.setdefault(lab, []).append(q)
        return cls(len(labels), tuple(frozenset(g) for g in groups.values()))

    def to_blocks_list(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


class Connectivity(NamedTuple):
    scc: Partition
    wcc: Partition
    comp_dag: frozenset[tuple[int, int]]


def apply_word(a: Automaton, q: int, w: Sequence[int]) -> int:
    """State reached from q after reading w (letter indices, left to right)."""
    d = a.delta
    for x in w:
        q = d[q][x]
    return q


def image_set(a: Automaton, states: Iterable[int], w: Sequence[int]) -> frozenset[int]:
    """Image of a state set under the word w."""
    cur = set(states)
    d = a.delta
    for x in w:
        cur = {d[q][x] for q in cur}
    return frozenset(cur)


def word_map(a: Automaton, w: Sequence[int]) -> tuple[int, ...]:
    """The full state map q -> q.w as a tuple."""
    m = list(range(a.n))
    d = a.delta
    for x in w:
        m = [d[q][x] for q in m]
    return tuple(m)


def format_word(a: Automaton, w: Sequence[int]) -> str:
    names = [a.letters[x] for x in w]
    if all(len(s) == 1 for s in names):
        return "".join(names)
    return ".".join(names)


def transition_digraph(a: Automaton) -> Digraph:
    """The digraph with an edge q -> q.x for every state q and letter x.

    Parallel edges collapse; letter identities are not retained.
    """
    edges = {(q, t) for q, row in enumerate(a.delta) for t in row}
    return Digraph(a.n, frozenset(edges))


def _dfs_finish_order(n: int, succ: Sequence[Sequence[int]]) -> list[int]:
    seen = [False] * n
    order: list[int] = []
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        stack: list[tuple[int, object]] = [(r, iter(succ[r]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)  # type: ignore[call-overload]
            if w is None:
                order.append(v)
                stack.pop()
            elif not seen[w]:
                seen[w] = True
                stack.append((w, iter(succ[w])))
    return order


def connectivity(d: Digraph) -> Connectivity:
    """Strong components, weak components, and the DAG between strong ones.

    comp_dag holds (B, B') pairs of scc block indices with B != B' whenever
    some edge runs from block B into block B'.
    """
    n = d.n
    order = _dfs_finish_order(n, d.succ)
    comp = [-1] * n
    labels = 0
    for r in reversed(order):
        if comp[r] >= 0:
            continue
        comp[r] = labels
        stack = [r]
        while stack:
            v = stack.pop()
            for u in d.pred[v]:
                if comp[u] < 0:
                    comp[u] = labels
                    stack.append(u)
        labels += 1
    scc = Partition.from_assignment(comp)

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in d.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    wcc = Partition.from_assignment([find(q) for q in range(n)])

    bo = scc.block_of
    dag = frozenset((bo[u], bo[v]) for u, v in d.edges if bo[u] != bo[v])
    return Connectivity(scc, wcc, dag)


def is_strongly_connected(d: Digraph) -> bool:
    return len(connectivity(d).scc) == 1


def is_congruence(a: Automaton, p: Partition) -> tuple[bool, tuple[int, int, int] | None]:
    """Whether every letter maps blocks into blocks.

    On failure returns the lexicographically least witness (q, s, x):
    states q < s in one block whose images under letter x land in
    different blocks.
    """
    if p.n != a.n:
        raise ValueError(f"partition is over {p.n} states, automaton has {a.n}")
    bo = p.block_of
    d = a.delta
    for q in range(a.n):
        for s in range(q + 1, a.n):
            if bo[q] != bo[s]:
                continue
            for x in range(a.k):
                if bo[d[q][x]] != bo[d[s][x]]:
                    return False, (q, s, x)
    return True, None


def quotient_automaton(a: Automaton, p: Partition) -> tuple[Automaton, tuple[int, ...]]:
    """The automaton induced on the blocks of a congruence.

    Quotient state i is block i in canonical order, so the projection map
    is exactly p.block_of. Raises ValueError (with the witness) if p is
    not a congruence.
    """
    ok, wit = is_congruence(a, p)
    if not ok:
        assert wit is not None
        q, s, x = wit
        raise ValueError(
            f"partition is not a congruence: states {q} and {s} separate "
            f"under letter {a.letters[x]!r}"
        )
    bo = p.block_of
    delta = tuple(
        tuple(bo[a.delta[min(b)][x]] for x in range(a.k)) for b in p.blocks
    )
    return Automaton(a.letters, delta), tuple(bo)


def reduce_to_sink(a: Automaton) -> tuple[Automaton, tuple[int, ...]]:
    """Restrict to the unique sink strong component of the transition digraph.

    Returns the restricted automaton and the tuple of original states it
    keeps, in ascending order. With several sink components no reset word
    can exist, so that case is an error.
    """
    conn = connectivity(transition_digraph(a))
    has_out = {src for src, _ in conn.comp_dag}
    sinks = [i for i in range(len(conn.scc)) if i not in has_out]
    if len(sinks) != 1:
        raise ValueError(
            "not reducible: automaton cannot be synchronizing "
            f"({len(sinks)} sink components)"
        )
    states = tuple(sorted(conn.scc.blocks[sinks[0]]))
    index = {q: j for j, q in enumerate(states)}
    delta = tuple(
        tuple(index[a.delta[q][x]] for x in range(a.k)) for q in states
    )
    return Automaton(a.letters, delta), states


def automaton_to_dot(a: Automaton) -> str:
    """GraphViz rendering of the transition graph, parallel letters merged."""
    lines = ["digraph automaton {", "  rankdir=LR;", "  node [shape=circle];"]
    arrows: dict[tuple[int, int], list[str]] = {}
    for q, row in enumerate(a.delta):
        for x, t in enumerate(row):
            arrows.setdefault((q, t), []).append(a.letters[x])
    for (q, t), names in sorted(arrows.items()):
        lines.append(f'  {q} -> {t} [label="{",".join(names)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_to_dot(d: Digraph) -> str:
    lines = ["digraph g {", "  node [shape=circle];"]
    for q in range(d.n):
        lines.append(f"  {q};")
    for u, v in sorted(d.edges):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
