"""Checks that an automaton's action is compatible with digraph intervals.

A letter (or word) action is compatible when it preserves interval
nonemptiness, maps intervals into the interval of the image pair
whenever paths run both ways, and collapses one of the two opposite
intervals whenever it glues the endpoints. Closure under composition
makes the per-letter check sufficient, which the sampled word check
probes empirically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Sequence

from autoint.core import (
    Automaton,
    Digraph,
    Partition,
    Word,
    connectivity,
    is_congruence,
    is_strongly_connected,
    quotient_automaton,
    transition_digraph,
    word_map,
)
from autoint.intervals import IntervalTable, interval_table, is_scc_dense


@dataclass(frozen=True)
class Violation:
    """One failed compatibility condition.

    condition is "I", "II" or "III"; letter is the letter index, or the
    whole word (a tuple) for sampled word checks; detail carries the
    offending states - for "II" the image states outside the target
    interval, for "III" the image of [x, y].
    """

    condition: str
    letter: int | Word
    x: int
    y: int
    detail: frozenset[int]


@dataclass(frozen=True)
class RespectReport:
    ok: bool
    violations: tuple[Violation, ...]


def _action_violations(
    table: IntervalTable, delta_map: Sequence[int], label: int | Word
) -> list[Violation]:
    """Conditions I-III for one state map (a letter or a composed word).

    I and II run over ordered pairs x != y; III is symmetric in x, y so
    it runs over unordered pairs. The x == y cases are either trivial or
    implied by the pair cases, and III would be vacuously false there.
    """
    n = table.n
    out = []
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            ixy = table.cell(x, y)
            if not ixy:
                continue
            tx, ty = delta_map[x], delta_map[y]
            target = table.cell(tx, ty)
            if not target:
                out.append(Violation("I", label, x, y, frozenset()))
                continue
            if table.cell(y, x):
                img = frozenset(delta_map[z] for z in ixy)
                if not img <= target:
                    out.append(Violation("II", label, x, y, img - target))
    for x in range(n):
        for y in range(x + 1, n):
            if delta_map[x] != delta_map[y]:
                continue
            img_xy = frozenset(delta_map[z] for z in table.cell(x, y))
            img_yx = frozenset(delta_map[z] for z in table.cell(y, x))
            if min(len(img_xy), len(img_yx)) > 1:
                out.append(Violation("III", label, x, y, img_xy))
    return out


def check_letter_conditions(a: Automaton, d: Digraph) -> RespectReport:
    """Verify conditions I-III for every letter of the automaton."""
    if a.n != d.n:
        raise ValueError(f"automaton has {a.n} states, digraph has {d.n} vertices")
    table = interval_table(d)
    viols: list[Violation] = []
    for x in range(a.k):
        row = [a.delta[q][x] for q in range(a.n)]
        viols.extend(_action_violations(table, row, x))
    viols.sort(key=lambda v: (v.condition, v.letter, v.x, v.y))
    return RespectReport(not viols, tuple(viols))


def sample_word_conditions(
    a: Automaton, d: Digraph, word_count: int, max_len: int, seed: int
) -> RespectReport:
    """Probe conditions I-III on random words from a fixed seed.

    When the per-letter conditions hold, closure under composition makes
    every word pass; a reported violation therefore indicates a bug, and
    the op exists to give cheap empirical evidence of that closure.
    Raises ValueError if the per-letter conditions already fail.
    """
    rep = check_letter_conditions(a, d)
    if not rep.ok:
        v = rep.violations[0]
        raise ValueError(
            f"letter conditions fail before sampling: condition {v.condition} "
            f"for letter {a.letters[v.letter]!r} at pair ({v.x}, {v.y})"
        )
    if word_count < 0 or max_len < 1:
        raise ValueError("need word_count >= 0 and max_len >= 1")
    table = interval_table(d)
    rng = random.Random(seed)
    viols: list[Violation] = []
    for _ in range(word_count):
        w = tuple(rng.randrange(a.k) for _ in range(rng.randint(1, max_len)))
        viols.extend(_action_violations(table, word_map(a, w), w))
    viols.sort(key=lambda v: (v.condition, v.letter, v.x, v.y))
    return RespectReport(not viols, tuple(viols))


def is_unique_return_paths(
    d: Digraph,
) -> tuple[bool, tuple[int, str, frozenset[int]] | None]:
    """Whether every cyclic strong component is a simple directed cycle.

    Inside a strong component that contains a cycle every vertex must
    have exactly one successor and one predecessor within the component.
    Acyclic (loop-free singleton) components are unconstrained. The
    witness names the first offending vertex, "in" or "out", and the
    neighbor set seen there.
    """
    conn = connectivity(d)
    for block in conn.scc.blocks:
        if len(block) == 1:
            v = min(block)
            if (v, v) not in d.edges:
                continue
        for v in sorted(block):
            outs = frozenset(u for u in d.succ[v] if u in block)
            if len(outs) != 1:
                return False, (v, "out", outs)
            ins = frozenset(u for u in d.pred[v] if u in block)
            if len(ins) != 1:
                return False, (v, "in", ins)
    return True, None


@dataclass(frozen=True)
class TowerCertificate:
    """A chain of digraphs, one per quotient stage.

    levels[0] lives on the states of the original automaton; each later
    digraph lives on the states of the quotient by the weak components
    of the previous level.
    """

    levels: tuple[Digraph, ...]

    def to_json_dict(self) -> dict:
        return {"levels": [d.to_json_dict() for d in self.levels]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "TowerCertificate":
        if not isinstance(data, dict) or "levels" not in data:
            raise ValueError('tower JSON needs a "levels" key')
        if not isinstance(data["levels"], (list, tuple)):
            raise ValueError('"levels" must be a list of digraphs')
        return cls(tuple(Digraph.from_json_dict(d) for d in data["levels"]))


@dataclass(frozen=True)
class TowerReport:
    """ok, the level index where verification failed (len(levels) means
    the base predicate rejected the final quotient), and a reason."""

    ok: bool
    level: int | None
    reason: str | None


def verify_tower(
    a: Automaton,
    cert: TowerCertificate,
    base: Callable[[Automaton], bool] | None = None,
) -> TowerReport:
    """Check a certificate level by level against the quotient chain.

    Each level must match the current automaton's size, the automaton
    must be strongly connected, the digraph scc-dense, the letter
    conditions must hold, and the weak components must form a congruence
    (automatic when the conditions hold). The default base predicate
    accepts exactly the one-state automaton.
    """
    base_ok = base if base is not None else (lambda m: m.n == 1)
    cur = a
    for i, lvl in enumerate(cert.levels):
        if lvl.n != cur.n:
            return TowerReport(
                False,
                i,
                f"level {i}: digraph has {lvl.n} vertices but the current "
                f"automaton has {cur.n} states",
            )
        if not is_strongly_connected(transition_digraph(cur)):
            return TowerReport(
                False, i, f"level {i}: automaton is not strongly connected"
            )
        dense, wit = is_scc_dense(lvl)
        if not dense:
            return TowerReport(
                False, i, f"level {i}: digraph is not scc-dense, witness {wit}"
            )
        rep = check_letter_conditions(cur, lvl)
        if not rep.ok:
            v = rep.violations[0]
            return TowerReport(
                False,
                i,
                f"level {i}: condition {v.condition} fails for letter "
                f"{cur.letters[v.letter]!r} at pair ({v.x}, {v.y})",
            )
        wcc = connectivity(lvl).wcc
        ok, cwit = is_congruence(cur, wcc)
        if not ok:
            return TowerReport(
                False,
                i,
                f"level {i}: weak components are not a congruence, witness {cwit}",
            )
        cur, _ = quotient_automaton(cur, wcc)
    if not base_ok(cur):
        return TowerReport(
            False,
            len(cert.levels),
            f"base: final {cur.n}-state automaton rejected by the base predicate",
        )
    return TowerReport(True, None, None)


def wcc_partition(d: Digraph) -> Partition:
    """Weak components of d; the congruence a tower level quotients by."""
    return connectivity(d).wcc
