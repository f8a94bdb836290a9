"""Reset words: exhaustive search and the structured component pipeline.

The structured route reduces a strongly connected automaton compatible
with an scc-dense digraph to its weak-component quotient: a reset word
for the quotient is lifted, extended into a single strong component,
and finished either by steering onto a one-element component or by a
collapse bounded by the number of distinct intervals. All claimed
bounds are asserted at runtime; a violation raises instead of being
silently accepted.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from autoint.core import (
    Automaton,
    Connectivity,
    Digraph,
    Partition,
    Word,
    connectivity,
    image_set,
    is_congruence,
    is_strongly_connected,
    quotient_automaton,
    transition_digraph,
)
from autoint.intervals import interval, is_scc_dense
from autoint.respect import check_letter_conditions

logger = logging.getLogger(__name__)

Provider = Callable[[Automaton], Sequence[int]]


class PropertyViolation(RuntimeError):
    """A mathematically guaranteed property failed on a concrete instance.

    The offending instance is attached as a JSON-ready dict so it can be
    persisted and replayed.
    """

    def __init__(self, message: str, instance: dict):
        super().__init__(message)
        self.instance = instance


class LemmaViolation(PropertyViolation):
    pass


class BoundViolation(PropertyViolation):
    pass


@dataclass(frozen=True)
class StageRecord:
    """Progress snapshot: cumulative word length and image size after a stage."""

    stage: str
    word_len: int
    image_size: int

    def to_json_dict(self) -> dict:
        return {
            "stage": self.stage,
            "word_len": self.word_len,
            "image_size": self.image_size,
        }


@dataclass(frozen=True)
class ResetResult:
    word: Word
    length: int
    bound: int
    bound_ok: bool
    trace: tuple[StageRecord, ...]

    def to_json_dict(self) -> dict:
        return {
            "word": list(self.word),
            "length": self.length,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "trace": [s.to_json_dict() for s in self.trace],
        }


def is_synchronizing(a: Automaton) -> bool:
    """Whether some word collapses all states to one.

    Classic pair criterion: every two-state set must be collapsible,
    checked by a backward closure from the pairs a single letter merges.
    """
    n = a.n
    if n == 1:
        return True
    d = a.delta
    rev: dict[int, list[int]] = {}
    mergeable = [False] * (n * n)
    queue: deque[int] = deque()
    for p in range(n):
        for q in range(p + 1, n):
            code = p * n + q
            for x in range(a.k):
                tp, tq = d[p][x], d[q][x]
                if tp == tq:
                    if not mergeable[code]:
                        mergeable[code] = True
                        queue.append(code)
                else:
                    if tp > tq:
                        tp, tq = tq, tp
                    rev.setdefault(tp * n + tq, []).append(code)
    found = sum(mergeable)
    while queue:
        for src in rev.get(queue.popleft(), ()):
            if not mergeable[src]:
                mergeable[src] = True
                found += 1
                queue.append(src)
    return found == n * (n - 1) // 2


def _mask_bfs(bits: Sequence[Sequence[int]], start: int, k: int) -> Word | None:
    """Shortest word collapsing the start set to one state, as subset BFS.

    bits[x][q] is the bitmask of delta[q][x]; state sets are bitmasks.
    Letters are tried in index order, so the result is deterministic.
    """
    if start & (start - 1) == 0:
        return ()
    parent: dict[int, tuple[int, int] | None] = {start: None}
    queue: deque[int] = deque([start])
    while queue:
        m = queue.popleft()
        for x in range(k):
            row = bits[x]
            im = 0
            mm = m
            while mm:
                low = mm & -mm
                im |= row[low.bit_length() - 1]
                mm ^= low
            if im not in parent:
                parent[im] = (m, x)
                if im & (im - 1) == 0:
                    out = []
                    cur = im
                    while True:
                        prev = parent[cur]
                        if prev is None:
                            return tuple(reversed(out))
                        cur, px = prev
                        out.append(px)
                queue.append(im)
    return None


def _letter_bits(a: Automaton) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(1 << a.delta[q][x] for q in range(a.n)) for x in range(a.k)
    )


def shortest_reset(a: Automaton) -> ResetResult | None:
    """A shortest reset word by breadth-first search over state sets.

    None when the automaton is not synchronizing. Ties break toward the
    lower letter index, so the word is reproducible.
    """
    n = a.n
    if n == 1:
        return ResetResult((), 0, 0, True, (StageRecord("subset-bfs", 0, 1),))
    w = _mask_bfs(_letter_bits(a), (1 << n) - 1, a.k)
    if w is None:
        return None
    bound = (n - 1) ** 2
    return ResetResult(
        w, len(w), bound, len(w) <= bound, (StageRecord("subset-bfs", len(w), 1),)
    )


def _steer_word(
    act: Sequence[Sequence[int]], starts: Iterable[int], targets: set[int], k: int
) -> Word | None:
    """Shortest word moving at least one start into targets.

    act is any deterministic action table (an automaton's delta or the
    induced action on component indices). Multi-source BFS; sources in
    ascending order and letters in index order keep it deterministic.
    """
    starts = sorted(set(starts))
    for q in starts:
        if q in targets:
            return ()
    parent: dict[int, tuple[int, int] | None] = {q: None for q in starts}
    queue: deque[int] = deque(starts)
    while queue:
        q = queue.popleft()
        for x in range(k):
            t = act[q][x]
            if t not in parent:
                parent[t] = (q, x)
                if t in targets:
                    out = []
                    cur = t
                    while True:
                        prev = parent[cur]
                        if prev is None:
                            return tuple(reversed(out))
                        cur, px = prev
                        out.append(px)
                queue.append(t)
    return None


def singleton_class_reset(
    a: Automaton, p: Partition, quotient_reset: Sequence[int]
) -> ResetResult:
    """Lift a quotient reset word through a congruence with a one-state block.

    The quotient word drives every state into a single block; a shortest
    quotient path then steers that block onto the singleton block, which
    pins the image to one state. With k blocks the result has length at
    most (k-1)^2 + (k-1) whenever the quotient word meets its own
    (k-1)^2 bound; otherwise the bound field degrades gracefully to
    len(quotient_reset) + (k-1).
    """
    if not is_strongly_connected(transition_digraph(a)):
        raise ValueError("automaton must be strongly connected")
    singles = {i for i, b in enumerate(p.blocks) if len(b) == 1}
    if not singles:
        raise ValueError("partition has no singleton block")
    aq, _ = quotient_automaton(a, p)  # raises with a witness if not a congruence
    w = tuple(quotient_reset)
    img = image_set(aq, range(aq.n), w)
    if len(img) != 1:
        raise ValueError("quotient_reset does not reset the quotient automaton")
    u = _steer_word(aq.delta, [next(iter(img))], singles, a.k)
    assert u is not None  # quotient of a strongly connected automaton
    word = w + u
    final = image_set(a, range(a.n), word)
    assert len(final) == 1
    k = aq.n
    if len(w) <= (k - 1) ** 2:
        bound = (k - 1) ** 2 + (k - 1)
    else:
        bound = len(w) + (k - 1)
    trace = (
        StageRecord("quotient-reset", len(w), len(image_set(a, range(a.n), w))),
        StageRecord("steer-to-singleton-block", len(word), 1),
    )
    return ResetResult(word, len(word), bound, len(word) <= bound, trace)


@dataclass(frozen=True)
class CernyFamily:
    """Deduplicated two-endpoint intervals, ordered for reproducibility."""

    sets: tuple[frozenset[int], ...]

    @property
    def m(self) -> int:
        return len(self.sets)


def cerny_interval_family(d: Digraph) -> CernyFamily:
    """All distinct intervals [x, y], x != y within one strong component.

    Every such interval has at least two elements (it contains both
    endpoints). For collapse-length purposes only distinct sets matter,
    so duplicates are dropped.
    """
    conn = connectivity(d)
    seen: set[frozenset[int]] = set()
    for block in conn.scc.blocks:
        verts = sorted(block)
        for x in verts:
            for y in verts:
                if x == y:
                    continue
                cell = interval(d, x, y)
                if len(cell) >= 2:
                    seen.add(cell)
    return CernyFamily(tuple(sorted(seen, key=lambda s: tuple(sorted(s)))))


def covering_interval(
    a: Automaton, d: Digraph, x_set: Iterable[int], w: Sequence[int]
) -> tuple[int, int]:
    """Endpoints x, y in X with X inside [x, y] and [x, y] collapsing under w.

    Such endpoints exist whenever the automaton is compatible with the
    scc-dense digraph, X sits inside one strong component, |X| > 1, and
    w collapses X; their absence is reported as a LemmaViolation with
    the full instance attached.
    """
    X = frozenset(x_set)
    if len(X) < 2:
        raise ValueError("X must contain at least two states")
    if len(image_set(a, X, w)) != 1:
        raise ValueError("w does not collapse X to a single state")
    conn = connectivity(d)
    if len({conn.scc.block_of[q] for q in X}) != 1:
        raise ValueError("X must lie within one strong component")
    dense, wit = is_scc_dense(d)
    if not dense:
        raise ValueError(f"digraph is not scc-dense (witness {wit})")
    rep = check_letter_conditions(a, d)
    if not rep.ok:
        raise ValueError("automaton does not satisfy the letter conditions")
    for x in sorted(X):
        for y in sorted(X):
            if x == y:
                continue
            cell = interval(d, x, y)
            if X <= cell and len(image_set(a, cell, w)) == 1:
                return x, y
    raise LemmaViolation(
        "no interval covers the collapsing set",
        {
            "automaton": a.to_json_dict(),
            "digraph": d.to_json_dict(),
            "X": sorted(X),
            "word": list(w),
        },
    )


def collapse_in_component(
    a: Automaton, c_states: Iterable[int], family: CernyFamily
) -> Word:
    """Shortest word collapsing a component, asserted against the family size.

    When the family consists of the distinct intervals of the digraph
    and C lies in one strong component, the collapse length never
    exceeds family.m; exceeding it raises BoundViolation with the
    instance attached.
    """
    C = frozenset(c_states)
    if not C:
        raise ValueError("component is empty")
    if len(C) == 1:
        return ()
    mask = 0
    for q in C:
        if not 0 <= q < a.n:
            raise ValueError(f"state {q} out of range")
        mask |= 1 << q
    w = _mask_bfs(_letter_bits(a), mask, a.k)
    if w is None:
        raise ValueError("component cannot be collapsed")
    if len(w) > family.m:
        raise BoundViolation(
            f"collapse length {len(w)} exceeds the family size {family.m}",
            {
                "automaton": a.to_json_dict(),
                "component": sorted(C),
                "family_size": family.m,
                "word": list(w),
            },
        )
    return w


def _validate_pipeline(a: Automaton, d: Digraph) -> Connectivity:
    if a.n != d.n:
        raise ValueError(f"automaton has {a.n} states, digraph has {d.n} vertices")
    if not is_strongly_connected(transition_digraph(a)):
        raise ValueError("automaton must be strongly connected")
    dense, wit = is_scc_dense(d)
    if not dense:
        raise ValueError(f"digraph is not scc-dense (witness {wit})")
    rep = check_letter_conditions(a, d)
    if not rep.ok:
        v = rep.violations[0]
        raise ValueError(
            f"letter conditions fail: condition {v.condition} for letter "
            f"{a.letters[v.letter]!r} at pair ({v.x}, {v.y})"
        )
    return connectivity(d)


def _quotient_word(aq: Automaton, provider: Provider | None) -> Word:
    if provider is not None:
        w = tuple(int(x) for x in provider(aq))
        if any(not 0 <= x < aq.k for x in w):
            raise ValueError("provider word uses letter indices out of range")
        return w
    res = shortest_reset(aq)
    if res is None:
        raise ValueError("the weak-component quotient is not synchronizing")
    return res.word


def _claim1(a, d, conn, provider: Provider | None) -> tuple[Word, list[tuple[str, int]]]:
    """Word taking the whole state set into one strong component.

    Returns the word plus (stage name, cumulative length) checkpoints.
    Assumes _validate_pipeline passed. Raises BoundViolation if the
    result exceeds (n_components - 1)^2.
    """
    scc, wcc = conn.scc, conn.wcc
    nblk, kblk = len(scc), len(wcc)
    stages: list[tuple[str, int]] = []
    if nblk == 1:
        return (), [("single-component", 0)]
    for part in (scc, wcc):
        okc, wit = is_congruence(a, part)
        if not okc:
            raise ValueError(f"component partition is not a congruence, witness {wit}")
    bo = scc.block_of
    act = tuple(
        tuple(bo[a.delta[min(blk)][x]] for x in range(a.k)) for blk in scc.blocks
    )
    wof = tuple(wcc.block_of[min(blk)] for blk in scc.blocks)
    sccs_in: list[list[int]] = [[] for _ in range(kblk)]
    for b in range(nblk):
        sccs_in[wof[b]].append(b)

    aq = None
    w: Word = ()
    if kblk > 1:
        aq, _ = quotient_automaton(a, wcc)
        w = _quotient_word(aq, provider)
        if len(image_set(aq, range(kblk), w)) != 1:
            raise ValueError("provider word does not reset the weak-component quotient")
    stages.append(("quotient-reset", len(w)))
    land = wcc.block_of[next(iter(image_set(a, range(a.n), w)))]

    sources = set(range(nblk)) - {t for _, t in conn.comp_dag}
    sinks = set(range(nblk)) - {s for s, _ in conn.comp_dag}
    single = {j for j in range(kblk) if len(sccs_in[j]) == 1}
    if single:
        # some weak component is one strong component; steer into it
        if land in single or aq is None:
            u: Word = ()
        else:
            steered = _steer_word(aq.delta, [land], single, a.k)
            assert steered is not None  # the quotient is strongly connected
            u = steered
        v = w + u
        stages.append(("steer-to-plain-component", len(v)))
    else:
        # every weak component splits; pick the one cheapest to track,
        # following either extreme of the component order
        best: tuple[int, int, int] | None = None
        for j in range(kblk):
            n_max = sum(1 for b in sccs_in[j] if b in sources)
            n_min = sum(1 for b in sccs_in[j] if b in sinks)
            for p2, mode in ((n_max, 0), (n_min, 1)):
                if best is None or (p2, mode, j) < best:
                    best = (p2, mode, j)
        assert best is not None
        _, mode, b1 = best
        if aq is not None and b1 != land:
            steered = _steer_word(aq.delta, [land], {b1}, a.k)
            assert steered is not None
            u = steered
        else:
            u = ()
        grow = list(w + u)
        stages.append(("steer-to-component", len(grow)))
        if mode == 0:
            tracked = [b for b in sccs_in[b1] if b in sources]
            goals = sinks
        else:
            tracked = [b for b in sccs_in[b1] if b in sinks]
            goals = sources
        pos = {j: j for j in tracked}
        alive = set(tracked)
        rounds = 0
        while alive:
            rounds += 1
            if rounds > len(tracked):
                raise LemmaViolation(
                    "extreme-component tracking failed to make progress",
                    {"automaton": a.to_json_dict(), "digraph": d.to_json_dict()},
                )
            frontier = {pos[j] for j in alive}
            seg = _steer_word(act, frontier, goals, a.k)
            assert seg is not None  # strong connectivity reaches every component
            grow.extend(seg)
            for j in list(alive):
                cur = pos[j]
                for x in seg:
                    cur = act[cur][x]
                pos[j] = cur
                if cur in goals:
                    alive.discard(j)
            assert len({pos[j] for j in alive}) < len(frontier)
        v = tuple(grow)
        stages.append(("collapse-extremes", len(v)))

    hit = {bo[q] for q in image_set(a, range(a.n), v)}
    if len(hit) != 1:
        raise LemmaViolation(
            "image is not contained in one strong component",
            {
                "automaton": a.to_json_dict(),
                "digraph": d.to_json_dict(),
                "word": list(v),
                "components_hit": sorted(hit),
            },
        )
    if len(v) > (nblk - 1) ** 2:
        raise BoundViolation(
            f"component word has length {len(v)} > ({nblk}-1)^2 = {(nblk - 1) ** 2}",
            {
                "automaton": a.to_json_dict(),
                "digraph": d.to_json_dict(),
                "word": list(v),
            },
        )
    return v, stages


def claim1_word(a: Automaton, d: Digraph, provider: Provider | None = None) -> Word:
    """A word sending all states into one strong component of the digraph.

    Its length is at most (s-1)^2 where s is the number of strong
    components; the excess raises BoundViolation. The provider supplies
    a reset word for the weak-component quotient (defaults to exhaustive
    search).
    """
    conn = _validate_pipeline(a, d)
    word, _ = _claim1(a, d, conn, provider)
    return word


def _trace_from_stages(a: Automaton, word: Word, stages: list[tuple[str, int]]):
    out = []
    for name, ln in stages:
        out.append(StageRecord(name, ln, len(image_set(a, range(a.n), word[:ln]))))
    return tuple(out)


def theorem_reset(a: Automaton, d: Digraph, provider: Provider | None = None) -> ResetResult:
    """Structured reset word for an automaton compatible with the digraph.

    Needs: matching sizes, strong connectivity, an scc-dense digraph,
    the letter conditions, and a synchronizing automaton. The word is
    built from a weak-component quotient reset plus component steering;
    its length is checked against (n-1)^2. If a claimed bound fails at
    runtime the instance is logged and the exhaustive search supplies
    the word; bound_ok then reports the honest outcome.
    """
    conn = _validate_pipeline(a, d)
    if not is_synchronizing(a):
        raise ValueError("automaton is not synchronizing")
    n = a.n
    if n == 1:
        return ResetResult((), 0, 0, True, (StageRecord("single-state", 0, 1),))
    bound = (n - 1) ** 2
    scc, wcc = conn.scc, conn.wcc

    word: Word
    stages: list[tuple[str, int]]
    try:
        if any(len(b) == 1 for b in wcc.blocks):
            # a one-state weak component: lift the quotient word directly
            aq, _ = quotient_automaton(a, wcc)
            res = singleton_class_reset(a, wcc, _quotient_word(aq, provider))
            word = res.word
            stages = [(s.stage, s.word_len) for s in res.trace]
        else:
            word, stages = _claim1(a, d, conn, provider)
            landed = image_set(a, range(n), word)
            cblk = scc.block_of[next(iter(landed))]
            C = scc.blocks[cblk]
            if len(C) > 1:
                trivia = {i for i, b in enumerate(scc.blocks) if len(b) == 1}
                if trivia:
                    bo = scc.block_of
                    act = tuple(
                        tuple(bo[a.delta[min(blk)][x]] for x in range(a.k))
                        for blk in scc.blocks
                    )
                    v0 = _steer_word(act, [cblk], trivia, a.k)
                    assert v0 is not None
                    word = word + v0
                    stages.append(("steer-to-trivial-component", len(word)))
                else:
                    fam = cerny_interval_family(d)
                    cw = collapse_in_component(a, C, fam)
                    word = word + cw
                    stages.append(("collapse-in-component", len(word)))
    except PropertyViolation as err:
        logger.warning(
            "structured construction failed (%s); falling back to exhaustive search",
            err,
        )
        res = shortest_reset(a)
        assert res is not None
        word = res.word
        stages = [("fallback-shortest", len(word))]

    final = image_set(a, range(n), word)
    if len(final) != 1:
        raise LemmaViolation(
            "constructed word does not reset the automaton",
            {
                "automaton": a.to_json_dict(),
                "digraph": d.to_json_dict(),
                "word": list(word),
            },
        )
    if len(word) > bound:
        logger.warning(
            "structured word of length %d exceeds (n-1)^2 = %d; retrying exhaustively",
            len(word),
            bound,
        )
        res = shortest_reset(a)
        assert res is not None
        word = res.word
        stages = [("fallback-shortest", len(word))]
        if len(word) > bound:
            logger.critical(
                "shortest reset word has length %d > (n-1)^2 = %d: %s",
                len(word),
                bound,
                a.to_json_dict(),
            )
    return ResetResult(
        word,
        len(word),
        bound,
        len(word) <= bound,
        _trace_from_stages(a, word, stages),
    )


def cerny_base(a: Automaton) -> bool:
    """Base predicate: the automaton verifiably meets the (n-1)^2 bound."""
    res = shortest_reset(a)
    return res is not None and res.bound_ok


def tower_reset(a: Automaton, cert, base: Callable[[Automaton], bool] | None = None) -> ResetResult:
    """Reset word produced by walking a verified certificate level by level.

    Each level contributes its quotient construction; the final quotient
    must satisfy the base predicate (one state by default; any base
    automaton with more states is reset exhaustively). The certificate
    is verified first and rejected with the failing level's reason.
    """
    from autoint.respect import verify_tower

    rep = verify_tower(a, cert, base)
    if not rep.ok:
        raise ValueError(f"invalid tower: {rep.reason}")
    return _tower_rec(a, cert.levels)


def _tower_rec(a: Automaton, levels) -> ResetResult:
    if not levels:
        if a.n == 1:
            return ResetResult((), 0, 0, True, (StageRecord("base", 0, 1),))
        res = shortest_reset(a)
        if res is None:
            raise ValueError("base automaton is not synchronizing")
        return res
    return theorem_reset(
        a, levels[0], provider=lambda q: _tower_rec(q, levels[1:]).word
    )
