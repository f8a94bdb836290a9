"""Interval-respecting automata toolkit.

Core vocabulary (automata, digraphs, partitions, quotients), directed
intervals with their density and compatibility checks, reset-word
construction with asserted bounds, stable-order reduction levels,
instance generators, and an exhaustive sweep harness.
"""

from autoint.core import (
    Automaton,
    Connectivity,
    Digraph,
    Partition,
    Word,
    apply_word,
    automaton_to_dot,
    connectivity,
    digraph_to_dot,
    format_word,
    image_set,
    is_congruence,
    is_strongly_connected,
    quotient_automaton,
    reduce_to_sink,
    transition_digraph,
    word_map,
)
from autoint.intervals import (
    IntervalTable,
    check_points,
    interval,
    interval_table,
    is_scc_dense,
)
from autoint.monotone import (
    Relation,
    find_stable_partial_orders,
    stable_closure,
    wm_level,
)
from autoint.respect import (
    RespectReport,
    TowerCertificate,
    TowerReport,
    Violation,
    check_letter_conditions,
    is_unique_return_paths,
    sample_word_conditions,
    verify_tower,
)
from autoint.synchro import (
    BoundViolation,
    CernyFamily,
    LemmaViolation,
    PropertyViolation,
    ResetResult,
    StageRecord,
    cerny_base,
    cerny_interval_family,
    claim1_word,
    collapse_in_component,
    covering_interval,
    is_synchronizing,
    shortest_reset,
    singleton_class_reset,
    theorem_reset,
    tower_reset,
)

__all__ = [
    "Automaton",
    "BoundViolation",
    "CernyFamily",
    "Connectivity",
    "Digraph",
    "IntervalTable",
    "LemmaViolation",
    "Partition",
    "PropertyViolation",
    "Relation",
    "ResetResult",
    "RespectReport",
    "StageRecord",
    "TowerCertificate",
    "TowerReport",
    "Violation",
    "Word",
    "apply_word",
    "automaton_to_dot",
    "cerny_base",
    "cerny_interval_family",
    "check_letter_conditions",
    "check_points",
    "claim1_word",
    "collapse_in_component",
    "connectivity",
    "covering_interval",
    "digraph_to_dot",
    "find_stable_partial_orders",
    "format_word",
    "image_set",
    "interval",
    "interval_table",
    "is_congruence",
    "is_scc_dense",
    "is_strongly_connected",
    "is_synchronizing",
    "is_unique_return_paths",
    "quotient_automaton",
    "reduce_to_sink",
    "sample_word_conditions",
    "shortest_reset",
    "singleton_class_reset",
    "stable_closure",
    "theorem_reset",
    "tower_reset",
    "transition_digraph",
    "verify_tower",
    "wm_level",
    "word_map",
]
