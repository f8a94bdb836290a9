"""Shared fixtures: small canonical instances used across the suite."""

from __future__ import annotations

import random

import pytest

from autoint import (
    Automaton,
    Digraph,
    Partition,
    is_strongly_connected,
    is_synchronizing,
    transition_digraph,
)


@pytest.fixture
def c3() -> Automaton:
    # 3-state cycle-and-nudge automaton, shortest reset length 4
    return Automaton(("a", "b"), ((1, 1), (2, 1), (0, 2)))


@pytest.fixture
def c4() -> Automaton:
    # 4-state sibling, shortest reset length 9
    return Automaton(("a", "b"), ((1, 1), (2, 1), (3, 2), (0, 3)))


@pytest.fixture
def d4() -> Digraph:
    return Digraph(4, frozenset({(0, 1), (1, 2), (2, 3), (3, 0)}))


@pytest.fixture
def theta4() -> Digraph:
    # 3-cycle with an extra two-way ear at vertex 0; not interval-dense
    return Digraph(4, frozenset({(0, 1), (1, 2), (2, 0), (0, 3), (3, 0)}))


@pytest.fixture
def twin_triangles() -> tuple[Automaton, Digraph]:
    """Two disjoint 3-cycles; letters move between them both ways.

    a rotates each triangle, b shifts the first onto the second and
    stalls inside the second, c shifts the second back onto the first.
    The strong components are congruence classes and the weak-component
    quotient resets under b.
    """
    d = Digraph(6, frozenset({(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)}))
    a = Automaton(
        ("a", "b", "c"),
        (
            (1, 3, 1),
            (2, 4, 2),
            (0, 5, 0),
            (4, 4, 0),
            (5, 4, 1),
            (3, 3, 2),
        ),
    )
    return a, d


def blow_up(
    aq: Automaton, sizes: list[int], rng: random.Random
) -> tuple[Automaton, Partition]:
    """Expand each state of aq into a block; transitions pick random members.

    The block partition is a congruence of the result by construction,
    and the quotient along it is aq again.
    """
    if len(sizes) != aq.n or any(s < 1 for s in sizes):
        raise ValueError("need one positive size per state")
    offs = [0]
    for s in sizes[:-1]:
        offs.append(offs[-1] + s)
    members = {b: list(range(offs[b], offs[b] + sizes[b])) for b in range(aq.n)}
    blk_of = [b for b in range(aq.n) for _ in range(sizes[b])]
    n = sum(sizes)
    delta = tuple(
        tuple(rng.choice(members[aq.delta[blk_of[q]][x]]) for x in range(aq.k))
        for q in range(n)
    )
    return Automaton(aq.letters, delta), Partition(
        n, tuple(frozenset(members[b]) for b in range(aq.n))
    )


def usable_blow_up(
    aq: Automaton, sizes: list[int], seed: int, tries: int = 500
) -> tuple[Automaton, Partition]:
    """A blow-up that is strongly connected and synchronizing."""
    rng = random.Random(seed)
    for _ in range(tries):
        a, p = blow_up(aq, sizes, rng)
        if is_strongly_connected(transition_digraph(a)) and is_synchronizing(a):
            return a, p
    raise RuntimeError(f"no usable blow-up in {tries} tries (seed={seed})")


@pytest.fixture
def five_state_blowup() -> tuple[Automaton, Partition]:
    # deterministic: the first draw with this seed is already usable
    a, p = usable_blow_up(
        Automaton(("a", "b"), ((1, 1), (2, 1), (0, 2))), [1, 2, 2], seed=7
    )
    assert a.delta == ((2, 1), (4, 1), (3, 1), (0, 3), (0, 3))
    return a, p
