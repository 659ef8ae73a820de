"""Scaling experiments over synthetic run-length inputs.

Sequences are built directly at the token level, so the decoded length can be
pushed far past anything that could be materialized (run lengths up to 10^9)
while the engine's work stays proportional to the number of runs. Three
experiments:

* a doubling sweep over the total run count, reporting the time ratio per
  doubling (the envelope for an n log n build is ~2.2 at these sizes);
* a fixed-run-count sweep that scales every run length by orders of
  magnitude, which must leave the runtime essentially unchanged;
* one giant unary pair whose exact total has a closed form, as an
  end-to-end sanity anchor at decoded length 10^9.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from rleacs.engine import AcsEngine
from rleacs.rle import SENTINEL_FIRST, SENTINEL_SECOND, FIRST_SYMBOL_ID, RleSeq, Run

DOUBLING_MIN = 1 << 14
DOUBLING_MAX = 1 << 17
RUN_COUNT_FIXED = 100_000
RUN_SCALES = (10, 1_000_000)
GIANT_LONG = 10**9
GIANT_SHORT = 10**6


@dataclass(frozen=True)
class BenchRow:
    label: str
    tokens: int
    decoded: int
    build_s: float
    query_s: float
    nodes: int
    lsum: int

    @property
    def total_s(self) -> float:
        return self.build_s + self.query_s


def synth_pair(
    total_runs: int, scale: int, seed: int, alphabet_size: int = 4
) -> tuple[RleSeq, RleSeq]:
    """Random pair with the given total content run count and length scale.

    The same seed yields the same symbol structure at every scale; only the
    run-length magnitudes change, which is what the decoupling experiment
    needs.
    """
    rng = random.Random(seed)
    symbols = range(FIRST_SYMBOL_ID, FIRST_SYMBOL_ID + alphabet_size)

    def runs(count: int, sentinel: int) -> RleSeq:
        body: list[Run] = []
        prev = -1
        for _ in range(count):
            sym = rng.choice([s for s in symbols if s != prev])
            body.append(Run(sym, rng.randint(scale, 2 * scale - 1)))
            prev = sym
        body.append(Run(sentinel, 1))
        return RleSeq("bench", tuple(body))

    half = max(total_runs // 2, 1)
    return runs(half, SENTINEL_FIRST), runs(total_runs - half, SENTINEL_SECOND)


def _measure(label: str, first: RleSeq, second: RleSeq, reps: int) -> BenchRow:
    best_build = best_query = float("inf")
    nodes = lsum = 0
    for _ in range(max(reps, 1)):
        t0 = time.perf_counter()
        engine = AcsEngine(first, second)
        t1 = time.perf_counter()
        lsum = engine.total()
        t2 = time.perf_counter()
        best_build = min(best_build, t1 - t0)
        best_query = min(best_query, t2 - t1)
        nodes = engine.trie.node_count + sum(
            t.node_count for t in engine.tries.values()
        )
    return BenchRow(
        label=label,
        tokens=len(engine.order),
        decoded=first.content_length + second.content_length,
        build_s=best_build,
        query_s=best_query,
        nodes=nodes,
        lsum=lsum,
    )


def doubling_sweep(
    max_tokens: int = DOUBLING_MAX,
    *,
    seed: int = 42,
    reps: int = 2,
    scale: int = 8,
) -> list[BenchRow]:
    """Time the engine at run counts 2^14, 2^15, ... up to max_tokens."""
    rows = []
    n = DOUBLING_MIN
    while n <= max(max_tokens, DOUBLING_MIN):
        first, second = synth_pair(n, scale, seed)
        rows.append(_measure(f"runs={n}", first, second, reps))
        n *= 2
    return rows


def runlength_sweep(
    total_runs: int = RUN_COUNT_FIXED,
    scales: tuple[int, ...] = RUN_SCALES,
    *,
    seed: int = 42,
    reps: int = 2,
) -> list[BenchRow]:
    """Fixed run count, run lengths scaled from 10 up to 10^6."""
    return [
        _measure(
            f"runs={total_runs} scale={scale}",
            *synth_pair(total_runs, scale, seed),
            reps,
        )
        for scale in scales
    ]


def giant_unary(reps: int = 1) -> tuple[BenchRow, Fraction, Fraction]:
    """One-run sequences with decoded lengths 10^9 and 10^6.

    Returns the timing row, the measured average as an exact rational, and
    the closed-form value (m(x-m) + m(m+1)/2) / x it must equal.
    """
    first = RleSeq("giant", (Run(FIRST_SYMBOL_ID, GIANT_LONG), Run(SENTINEL_FIRST, 1)))
    second = RleSeq("small", (Run(FIRST_SYMBOL_ID, GIANT_SHORT), Run(SENTINEL_SECOND, 1)))
    row = _measure("unary 1e9 vs 1e6", first, second, reps)
    x, m = GIANT_LONG, GIANT_SHORT
    expected = Fraction(m * (x - m) + m * (m + 1) // 2, x)
    return row, Fraction(row.lsum, x), expected


def ratios(rows: list[BenchRow]) -> list[float]:
    """Total-time ratio of each row to the previous one (first entry 1.0)."""
    out = [1.0]
    for prev, cur in zip(rows, rows[1:]):
        out.append(cur.total_s / prev.total_s if prev.total_s > 0 else float("inf"))
    return out


def format_table(rows: list[BenchRow], with_ratios: bool = True) -> str:
    """Plain text table, one row per measurement."""
    lines = [
        f"{'label':<28} {'tokens':>9} {'decoded':>14} {'build_s':>9} "
        f"{'query_s':>9} {'nodes':>9} {'ratio':>6}"
    ]
    rat = ratios(rows) if with_ratios else [float("nan")] * len(rows)
    for row, r in zip(rows, rat):
        ratio_text = f"{r:.2f}" if with_ratios else "-"
        lines.append(
            f"{row.label:<28} {row.tokens:>9} {row.decoded:>14} "
            f"{row.build_s:>9.4f} {row.query_s:>9.4f} {row.nodes:>9} {ratio_text:>6}"
        )
    return "\n".join(lines)
