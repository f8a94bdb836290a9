"""Exhaustive sweeps over every n-state k-letter automaton.

The sweep walks all n^(n*k) transition tables in lexicographic order
(the flattened table is incremented like an odometer), computes the
shortest reset length of each by breadth-first search over state-set
bitmasks, and streams one JSON record per automaton to a .jsonl file.
Records carry no timestamps, so a rerun is byte-identical. Bound
violations are additionally dumped with their full tables to a sibling
counterexamples file, and a length histogram is rendered next to the
report.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from autoint.plots import render_length_histogram

_CHUNK = 250_000


@dataclass(frozen=True)
class RunRecord:
    """One sweep row; class_tags is free-form and empty in plain sweeps."""

    id: str
    n: int
    k: int
    synchronizing: bool
    shortest_len: int | None
    bound: int
    bound_ok: bool
    class_tags: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "k": self.k,
            "synchronizing": self.synchronizing,
            "shortest_len": self.shortest_len,
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "class_tags": list(self.class_tags),
        }


@dataclass(frozen=True)
class CorpusSummary:
    n: int
    k: int
    total: int
    synchronizing: int
    violations: int
    histogram: dict[int, int]
    out_path: str
    counterexamples_path: str | None
    figure_path: str | None
    elapsed_s: float

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "total": self.total,
            "synchronizing": self.synchronizing,
            "violations": self.violations,
            "histogram": {str(L): c for L, c in sorted(self.histogram.items())},
            "out_path": self.out_path,
            "counterexamples_path": self.counterexamples_path,
            "figure_path": self.figure_path,
            "elapsed_s": round(self.elapsed_s, 3),
        }


def _id_of(n: int, k: int, flat: Iterable[int]) -> str:
    digits = list(flat)
    body = "".join(map(str, digits)) if n <= 10 else "-".join(map(str, digits))
    return f"{n}x{k}:{body}"


def _strongly_connected_flat(flat: list[int], n: int, k: int) -> bool:
    adj = [0] * n
    radj = [0] * n
    for q in range(n):
        base = q * k
        for x in range(k):
            t = flat[base + x]
            adj[q] |= 1 << t
            radj[t] |= 1 << q
    full = (1 << n) - 1
    for nbr in (adj, radj):
        r = 1
        while True:
            nr = r
            m = r
            while m:
                low = m & -m
                nr |= nbr[low.bit_length() - 1]
                m ^= low
            if nr == r:
                break
            r = nr
        if r != full:
            return False
    return True


def _scan_chunk(args: tuple[int, int, int, int, bool]) -> tuple:
    """Sweep table indices [start, stop); returns lines and tallies.

    The shortest-reset search uses per-letter image tables built by
    dynamic programming over subsets, then a plain breadth-first layer
    walk with a per-automaton visit stamp so buffers are reused.
    """
    n, k, start, stop, sc_only = args
    width = n * k
    flat = [0] * width
    idx0 = start
    for pos in range(width - 1, -1, -1):
        flat[pos] = idx0 % n
        idx0 //= n
    size = 1 << n
    full = size - 1
    bound = (n - 1) ** 2
    imgs = [[0] * size for _ in range(k)]
    seen = [0] * size
    lines: list[str] = []
    hist: Counter[int] = Counter()
    sync_count = 0
    violations: list[dict] = []
    letters = [chr(ord("a") + x) for x in range(k)]

    for idx in range(start, stop):
        if idx > start:
            pos = width - 1
            while True:
                flat[pos] += 1
                if flat[pos] < n:
                    break
                flat[pos] = 0
                pos -= 1
        if sc_only and not _strongly_connected_flat(flat, n, k):
            continue
        for x in range(k):
            row = imgs[x]
            for q in range(n):
                row[1 << q] = 1 << flat[q * k + x]
            for m in range(3, size):
                if m & (m - 1):
                    row[m] = row[m & (m - 1)] | row[m & -m]
        stamp = idx - start + 1
        if full & (full - 1) == 0:
            length: int | None = 0
        else:
            seen[full] = stamp
            cur = [full]
            depth = 0
            length = None
            while cur and length is None:
                depth += 1
                nxt = []
                for m in cur:
                    for x in range(k):
                        im = imgs[x][m]
                        if seen[im] != stamp:
                            seen[im] = stamp
                            if im & (im - 1) == 0:
                                length = depth
                                break
                            nxt.append(im)
                    if length is not None:
                        break
                cur = nxt
        sync = length is not None
        ok = length <= bound if sync else True
        if sync:
            sync_count += 1
            hist[length] += 1
        rec = {
            "id": _id_of(n, k, flat),
            "n": n,
            "k": k,
            "synchronizing": sync,
            "shortest_len": length,
            "bound": bound,
            "bound_ok": ok,
            "class_tags": [],
        }
        lines.append(json.dumps(rec, separators=(",", ":")))
        if not ok:
            violations.append(
                {
                    "id": rec["id"],
                    "letters": letters,
                    "delta": [
                        [flat[q * k + x] for x in range(k)] for q in range(n)
                    ],
                    "shortest_len": length,
                    "bound": bound,
                }
            )
    return lines, hist, sync_count, violations


def verify_corpus(
    n: int,
    k: int,
    out_path: str | Path,
    *,
    jobs: int = 1,
    strongly_connected_only: bool = False,
    plot: bool = True,
    plot_path: str | Path | None = None,
) -> CorpusSummary:
    """Sweep all n^(n*k) automata, streaming records to out_path.

    Work is split into index ranges; with jobs > 1 the ranges run in a
    process pool but are written back in order, so the output does not
    depend on the job count. Returns the aggregate summary; automata
    beating the (n-1)^2 bound (there should be none) are listed next to
    the report with their full tables.
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if k > 26:
        raise ValueError("letter count must be at most 26")
    if jobs < 1:
        raise ValueError("jobs must be positive")
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    total = n ** (n * k)
    t0 = time.monotonic()
    ranges = [
        (n, k, lo, min(lo + _CHUNK, total), strongly_connected_only)
        for lo in range(0, total, _CHUNK)
    ]
    hist: Counter[int] = Counter()
    sync_count = 0
    written = 0
    violations: list[dict] = []
    with out.open("w", encoding="utf-8") as fh:
        def consume(result: tuple) -> None:
            nonlocal sync_count, written
            lines, h, s, v = result
            fh.write("\n".join(lines))
            if lines:
                fh.write("\n")
            written += len(lines)
            hist.update(h)
            sync_count += s
            violations.extend(v)

        if jobs == 1 or len(ranges) == 1:
            for r in ranges:
                consume(_scan_chunk(r))
        else:
            with multiprocessing.Pool(processes=jobs) as pool:
                for result in pool.imap(_scan_chunk, ranges):
                    consume(result)

    cx_path: str | None = None
    if violations:
        cx = out.with_name(out.stem + ".counterexamples.jsonl")
        with cx.open("w", encoding="utf-8") as fh:
            for v in violations:
                fh.write(json.dumps(v, separators=(",", ":")) + "\n")
        cx_path = str(cx)

    fig_path: str | None = None
    if plot:
        target = Path(plot_path) if plot_path is not None else out.with_suffix(".png")
        fig_path = render_length_histogram(
            dict(hist),
            (n - 1) ** 2,
            target,
            title=f"n={n}, k={k}: reset lengths over {written} automata",
        )

    return CorpusSummary(
        n=n,
        k=k,
        total=written,
        synchronizing=sync_count,
        violations=len(violations),
        histogram=dict(hist),
        out_path=str(out),
        counterexamples_path=cx_path,
        figure_path=fig_path,
        elapsed_s=time.monotonic() - t0,
    )
