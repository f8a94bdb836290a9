"""Command-line front end.

Exit codes: 0 when the requested check passes or output is produced,
1 when a mathematical property fails to hold (not synchronizing,
violated conditions, invalid tower, bound excess), 2 for input or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from autoint import corpus, genlab
from autoint.core import (
    Automaton,
    Digraph,
    Partition,
    automaton_to_dot,
    digraph_to_dot,
    format_word,
)
from autoint.intervals import check_points, interval, interval_table, is_scc_dense
from autoint.monotone import wm_level
from autoint.respect import (
    TowerCertificate,
    check_letter_conditions,
    sample_word_conditions,
    verify_tower,
)
from autoint.synchro import (
    PropertyViolation,
    cerny_base,
    shortest_reset,
    singleton_class_reset,
    tower_reset,
)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as err:
        raise ValueError(f"{path}: invalid JSON ({err})") from None


def _automaton(path: str) -> Automaton:
    return Automaton.from_json_dict(_load_json(path))


def _digraph(path: str) -> Digraph:
    return Digraph.from_json_dict(_load_json(path))


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _violation_json(a: Automaton, v) -> dict:
    if isinstance(v.letter, tuple):
        label = format_word(a, v.letter)
    else:
        label = a.letters[v.letter]
    return {
        "condition": v.condition,
        "letter": label,
        "x": v.x,
        "y": v.y,
        "detail": sorted(v.detail),
    }


def _cmd_check_sync(args) -> int:
    a = _automaton(args.automaton)
    res = shortest_reset(a)
    if res is None:
        _emit({"synchronizing": False})
        return 1
    out = {"synchronizing": True, **res.to_json_dict()}
    out["word_str"] = format_word(a, res.word)
    _emit(out)
    return 0


def _cmd_intervals(args) -> int:
    d = _digraph(args.digraph)
    if args.pair is not None:
        x, y = args.pair
        if not (0 <= x < d.n and 0 <= y < d.n):
            raise ValueError(f"pair out of range 0..{d.n - 1}")
        _emit({"x": x, "y": y, "interval": sorted(interval(d, x, y))})
        return 0
    if args.dense:
        ok, wit = is_scc_dense(d)
        _emit({"dense": ok, "witness": list(wit) if wit else None})
        return 0
    if args.check_points:
        pts = sorted(
            (sorted(pair), z) for pair, z in check_points(d)
        )
        _emit({"check_points": [{"pair": p, "z": z} for p, z in pts]})
        return 0
    table = interval_table(d)
    _emit(
        {
            "n": d.n,
            "cells": [[sorted(table.cell(x, y)) for y in range(d.n)] for x in range(d.n)],
        }
    )
    return 0


def _cmd_respect(args) -> int:
    a = _automaton(args.automaton)
    d = _digraph(args.digraph)
    rep = check_letter_conditions(a, d)
    out = {
        "letters_ok": rep.ok,
        "violations": [_violation_json(a, v) for v in rep.violations],
    }
    if args.words and rep.ok:
        wrep = sample_word_conditions(a, d, args.words, args.max_len, args.seed)
        out["words_checked"] = args.words
        out["words_ok"] = wrep.ok
        out["word_violations"] = [_violation_json(a, v) for v in wrep.violations]
    _emit(out)
    return 0 if rep.ok and out.get("words_ok", True) else 1


def _base_pred(name: str):
    return cerny_base if name == "cerny" else None


def _cmd_tower_verify(args) -> int:
    a = _automaton(args.automaton)
    cert = TowerCertificate.from_json_dict(_load_json(args.certificate))
    rep = verify_tower(a, cert, _base_pred(args.base))
    _emit({"ok": rep.ok, "level": rep.level, "reason": rep.reason})
    return 0 if rep.ok else 1


def _cmd_tower_reset(args) -> int:
    a = _automaton(args.automaton)
    cert = TowerCertificate.from_json_dict(_load_json(args.certificate))
    rep = verify_tower(a, cert, _base_pred(args.base))
    if not rep.ok:
        _emit({"ok": False, "level": rep.level, "reason": rep.reason})
        return 1
    res = tower_reset(a, cert, _base_pred(args.base))
    out = res.to_json_dict()
    out["word_str"] = format_word(a, res.word)
    _emit(out)
    return 0 if res.bound_ok else 1


def _cmd_reset_prop1(args) -> int:
    a = _automaton(args.automaton)
    data = _load_json(args.partition)
    if not isinstance(data, dict) or "blocks" not in data:
        raise ValueError('partition JSON needs a "blocks" key')
    p = Partition(a.n, tuple(frozenset(b) for b in data["blocks"]))
    from autoint.core import quotient_automaton

    aq, _ = quotient_automaton(a, p)
    qres = shortest_reset(aq)
    if qres is None:
        raise ValueError("quotient automaton is not synchronizing")
    res = singleton_class_reset(a, p, qres.word)
    out = res.to_json_dict()
    out["word_str"] = format_word(a, res.word)
    _emit(out)
    return 0 if res.bound_ok else 1


def _cmd_wm_level(args) -> int:
    a = _automaton(args.automaton)
    _emit({"level": wm_level(a, args.max), "max_level": args.max})
    return 0


def _gen_out(a: Automaton, d: Digraph | None = None) -> dict:
    if d is None:
        return a.to_json_dict()
    return {"automaton": a.to_json_dict(), "digraph": d.to_json_dict()}


def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "cerny":
        _emit(_gen_out(genlab.gen_cerny(args.states)))
    elif kind == "orientable":
        a, d = genlab.gen_orientable(args.states, args.letters, args.seed)
        _emit(_gen_out(a, d))
    elif kind == "unique-return":
        sizes = tuple(int(s) for s in args.cycles.split(","))
        edges = []
        for spec in args.dag_edge or []:
            u, _, v = spec.partition(":")
            edges.append((int(u), int(v)))
        urp = genlab.UrpSpec(sizes, tuple(edges), args.seed)
        a, d = genlab.gen_unique_return(urp, args.letters)
        _emit(_gen_out(a, d))
    elif kind == "monotonic":
        _emit(_gen_out(genlab.gen_monotonic(args.states, args.letters, args.seed)))
    elif kind == "random":
        _emit(_gen_out(genlab.gen_random(args.states, args.letters, args.seed)))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown generator {kind!r}")
    return 0


def _cmd_enumerate(args) -> int:
    summary = corpus.verify_corpus(
        args.states,
        args.letters,
        args.out,
        jobs=args.jobs,
        strongly_connected_only=args.strongly_connected,
        plot=not args.no_plot,
        plot_path=args.plot_path,
    )
    _emit(summary.to_json_dict())
    return 1 if summary.violations else 0


def _cmd_dot(args) -> int:
    data = _load_json(args.input)
    if isinstance(data, dict) and "delta" in data:
        sys.stdout.write(automaton_to_dot(Automaton.from_json_dict(data)))
    elif isinstance(data, dict) and "edges" in data:
        sys.stdout.write(digraph_to_dot(Digraph.from_json_dict(data)))
    else:
        raise ValueError('input JSON has neither "delta" nor "edges"')
    return 0


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="autoint",
        description="Synchronization and interval-compatibility toolkit",
    )
    sub = top.add_subparsers(dest="cmd", required=True)

    for name in ("check-sync", "shortest"):
        p = sub.add_parser(name, help="shortest reset word by subset BFS")
        p.add_argument("automaton")
        p.set_defaults(func=_cmd_check_sync)

    p = sub.add_parser("intervals", help="interval cells of a digraph")
    p.add_argument("digraph")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pair", nargs=2, type=int, metavar=("X", "Y"))
    g.add_argument("--dense", action="store_true")
    g.add_argument("--check-points", action="store_true")
    p.set_defaults(func=_cmd_intervals)

    p = sub.add_parser("respect", help="interval-compatibility conditions")
    p.add_argument("automaton")
    p.add_argument("digraph")
    p.add_argument("--words", type=int, default=0, help="also sample N random words")
    p.add_argument("--max-len", type=int, default=10)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_respect)

    p = sub.add_parser("tower", help="quotient-tower certificates")
    tsub = p.add_subparsers(dest="tower_cmd", required=True)
    for name, fn in (("verify", _cmd_tower_verify), ("reset", _cmd_tower_reset)):
        tp = tsub.add_parser(name)
        tp.add_argument("automaton")
        tp.add_argument("certificate")
        tp.add_argument("--base", choices=("unit", "cerny"), default="unit")
        tp.set_defaults(func=fn)

    p = sub.add_parser("reset-prop1", help="reset via a singleton-block congruence")
    p.add_argument("automaton")
    p.add_argument("partition")
    p.set_defaults(func=_cmd_reset_prop1)

    p = sub.add_parser("wm-level", help="order-reduction level search")
    p.add_argument("automaton")
    p.add_argument("--max", type=int, required=True)
    p.set_defaults(func=_cmd_wm_level)

    p = sub.add_parser("gen", help="instance generators")
    gsub = p.add_subparsers(dest="kind", required=True)
    gp = gsub.add_parser("cerny")
    gp.add_argument("--states", type=int, required=True)
    gp = gsub.add_parser("orientable")
    gp.add_argument("--states", type=int, required=True)
    gp.add_argument("--letters", type=int, default=2)
    gp.add_argument("--seed", type=int, required=True)
    gp = gsub.add_parser("unique-return")
    gp.add_argument("--cycles", required=True, help="comma-separated cycle sizes")
    gp.add_argument(
        "--dag-edge",
        action="append",
        metavar="U:V",
        help="edge between cycle indices; repeatable",
    )
    gp.add_argument("--letters", type=int, default=2)
    gp.add_argument("--seed", type=int, required=True)
    gp = gsub.add_parser("monotonic")
    gp.add_argument("--states", type=int, required=True)
    gp.add_argument("--letters", type=int, default=2)
    gp.add_argument("--seed", type=int, required=True)
    gp = gsub.add_parser("random")
    gp.add_argument("--states", type=int, required=True)
    gp.add_argument("--letters", type=int, default=2)
    gp.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("enumerate", help="exhaustive sweep with JSONL report")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--letters", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strongly-connected", action="store_true")
    p.add_argument("--no-plot", action="store_true")
    p.add_argument("--plot-path", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("dot", help="GraphViz rendering of an automaton or digraph")
    p.add_argument("input")
    p.set_defaults(func=_cmd_dot)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "words", 0) and args.seed is None:
        parser.error("--words requires --seed")
    try:
        return args.func(args)
    except PropertyViolation as err:
        print(
            json.dumps({"error": str(err), "instance": err.instance}, indent=2),
            file=sys.stderr,
        )
        return 1
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
