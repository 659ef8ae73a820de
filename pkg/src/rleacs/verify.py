"""Randomized cross-validation of the fast engine against the brute oracle.

Each trial draws a random pair (alphabet size and run-length mean rotate
through fixed grids), then checks every layer: suffix order and lcps against
the brute sort, match-length totals against the brute scan, per-run sums
against per-position sums, the final run against its closed forms, distance
axioms, and the structural invariants of the tries. The first failing check
aborts the run and reports both inputs in the run-length text format so the
case can be replayed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from string import ascii_lowercase

import numpy as np

from rleacs.engine import AcsEngine, acs_self, dist_value
from rleacs.oracle import DEFAULT_BUDGET, OracleBudget, brute_match_lengths, brute_suffix_sort
from rleacs.rle import SENTINEL_SECOND, Alphabet, RleSeq, decode_ids, encode
from rleacs.suffixes import suffix_lcp

ALPHABET_SIZES = (2, 4, 20)
RUN_LENGTH_MEANS = (1.5, 4.0, 32.0)


@dataclass(frozen=True)
class VerifyReport:
    passed: int
    total: int
    failure: str | None = None
    failure_record: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def geometric(rng: random.Random, mean: float) -> int:
    """Run length >= 1 with the given mean."""
    if mean <= 1.0:
        return 1
    q = 1.0 / mean
    u = rng.random()
    return 1 + int(math.log1p(-u) / math.log1p(-q))


def random_text(rng: random.Random, n: int, alphabet_size: int, mean_run: float) -> str:
    """Random text of length n with geometric run lengths, runs kept maximal."""
    symbols = ascii_lowercase[:alphabet_size]
    out: list[str] = []
    prev = None
    while len(out) < n:
        ch = rng.choice(symbols)
        if ch == prev:
            continue
        out.extend(ch * geometric(rng, mean_run))
        prev = ch
    return "".join(out[:n])


def rle_record(seq: RleSeq, alphabet: Alphabet) -> str:
    """Render one sequence in the run-length text format, for replaying."""
    body = " ".join(f"{alphabet.to_char[sym]}{length}" for sym, length in seq.content_runs)
    return f">{seq.name}\n{body}"


def _leaf_intervals(parent: list[int], str_depth: list[int], leaves: list[int]):
    """Leaf-rank interval [lo, hi] under every node, children before parents."""
    n = len(parent)
    lo = [n] * n
    hi = [-1] * n
    for rank, leaf in enumerate(leaves):
        lo[leaf] = hi[leaf] = rank
    for v in sorted(range(n), key=str_depth.__getitem__, reverse=True):
        p = parent[v]
        if p >= 0:
            lo[p] = min(lo[p], lo[v])
            hi[p] = max(hi[p], hi[v])
    return lo, hi


def _interval_min_mismatches(
    label: str,
    parent: list[int],
    str_depth: list[int],
    is_leaf: list[bool],
    leaves: list[int],
    leaf_depths: list[int],
    gaps: list[int],
) -> list[str]:
    """Check str_depth of every node against the gap array it must summarize."""
    failures = []
    lo, hi = _leaf_intervals(parent, str_depth, leaves)
    for rank, leaf in enumerate(leaves):
        if str_depth[leaf] != leaf_depths[rank]:
            failures.append(f"{label}: leaf {rank} str_depth {str_depth[leaf]} != {leaf_depths[rank]}")
    # The root is synthetic (empty string, depth 0); a subset of suffixes may
    # share a nonzero prefix, so the exact-min law binds only below it.
    spans = [
        (v, lo[v], hi[v])
        for v in range(len(parent))
        if not is_leaf[v] and hi[v] > lo[v] and parent[v] >= 0
    ]
    if spans:
        arr = np.array(gaps + [max(gaps) + 1 if gaps else 1], dtype=np.int64)
        flat = np.array([(s[1], s[2]) for s in spans], dtype=np.int64).ravel()
        mins = np.minimum.reduceat(arr, flat)[::2]
        for (v, a, b), got in zip(spans, mins.tolist()):
            if str_depth[v] != got:
                failures.append(
                    f"{label}: node {v} str_depth {str_depth[v]} != interval min {got} over [{a},{b})"
                )
    return failures


def check_pair(
    first: RleSeq,
    second: RleSeq,
    *,
    engine_factory=AcsEngine,
    budget: OracleBudget = DEFAULT_BUDGET,
    deep: bool = True,
) -> list[str]:
    """All cross-checks for one ordered pair; returns failure descriptions.

    A crash inside the engine under test is itself a finding, so engine
    exceptions are reported as failures rather than raised. Oracle budget
    errors still propagate: they mean the harness was misconfigured.
    """
    try:
        engine = engine_factory(first, second)
    except Exception as exc:
        return [f"engine build raised {type(exc).__name__}: {exc}"]
    first, second = engine.first, engine.second
    x_text = decode_ids(first, with_sentinel=False)
    y_text = decode_ids(second, with_sentinel=False)
    brute_order = brute_suffix_sort(first, second, budget)
    brute_lengths = brute_match_lengths(x_text, y_text, budget)
    try:
        return _compare(
            engine, brute_order, brute_lengths, x_text, y_text,
            engine_factory=engine_factory, deep=deep,
        )
    except Exception as exc:
        return [f"engine query raised {type(exc).__name__}: {exc}"]


def _compare(
    engine,
    brute_order,
    brute_lengths: list[int],
    x_text: str,
    y_text: str,
    *,
    engine_factory,
    deep: bool,
) -> list[str]:
    failures: list[str] = []
    first, second = engine.first, engine.second
    if engine.order.refs != brute_order.refs:
        failures.append("suffix order differs from brute sort")
    if engine.order.dlcp != brute_order.dlcp:
        failures.append("suffix lcp array differs from brute sort")
    if engine.order.suffix_lengths != brute_order.suffix_lengths:
        failures.append("suffix lengths differ from brute sort")

    lsum = engine.total()
    if lsum != sum(brute_lengths):
        failures.append(f"lsum {lsum} != brute {sum(brute_lengths)}")
    if not 0 <= lsum <= len(x_text) * len(y_text):
        failures.append(f"lsum {lsum} outside [0, x*y]")

    per_position = engine.per_position_lengths(cap=max(len(x_text), 1))
    if per_position != brute_lengths:
        failures.append("per-position lengths differ from brute scan")
    if sum(per_position) != lsum:
        failures.append("per-position sum differs from per-run sum")

    pos = 0
    for i in range(1, first.run_count + 1):
        f = first.runs[i - 1].length
        if engine.run_sum(i) != sum(per_position[pos : pos + f]):
            failures.append(f"run {i} sum does not match its positions")
            break
        pos += f

    last = first.run_count
    sym, f = first.runs[last - 1]
    m = engine.max_run.get(sym, 0)
    closed = 0 if m == 0 else (f * (f + 1) // 2 if f <= m else m * f - m * (m - 1) // 2)
    if engine.run_sum(last) != closed:
        failures.append(f"final run sum {engine.run_sum(last)} != closed form {closed}")

    self_engine = engine_factory(first, first)
    x_len = first.content_length
    y_len = second.content_length
    acs_xx = self_engine.total()
    if acs_xx * 2 != x_len * (x_len + 1):
        failures.append(f"self total {acs_xx} != closed form {x_len * (x_len + 1) // 2}")

    if x_len >= 2 and y_len >= 2 and lsum > 0:
        reverse = engine_factory(second, first)
        back = reverse.total()
        if back > 0:
            acs_xy = Fraction(lsum, x_len)
            acs_yx = Fraction(back, y_len)
            forward = dist_value(x_len, y_len, acs_xy, acs_yx)
            backward = dist_value(y_len, x_len, acs_yx, acs_xy)
            if abs(forward - backward) > 1e-12:
                failures.append("distance not symmetric")
        self_value = Fraction(acs_xx, x_len)
        if self_value != acs_self(x_len):
            failures.append("engine self average differs from closed form")
        elif abs(dist_value(x_len, x_len, self_value, self_value)) > 1e-12:
            failures.append("self distance not zero")

    if deep:
        failures.extend(_structural_checks(engine))
    return failures


def _structural_checks(engine: AcsEngine) -> list[str]:
    failures: list[str] = []
    order = engine.order
    trie = engine.trie

    failures.extend(
        _interval_min_mismatches(
            "main trie",
            trie.parent,
            trie.str_depth,
            trie.is_leaf,
            trie.leaves,
            order.suffix_lengths,
            order.dlcp,
        )
    )

    annotated = sum(1 for s in trie.leaf_sym if s >= 0)
    extracted = sum(len(t.leaves) for t in engine.tries.values())
    if extracted != annotated:
        failures.append(f"symbol tries hold {extracted} leaves, expected {annotated}")

    for sym, sub in engine.tries.items():
        for v in range(sub.node_count):
            p = sub.parent[v]
            if p >= 0 and sub.freq[p] < sub.freq[v]:
                failures.append(f"trie {sym}: freq increases from node {p} to {v}")
                break
        for v in range(sub.node_count):
            p = sub.parent[v]
            expect = 0 if p < 0 else (
                sub.weight[p] + sub.freq[v] * (sub.str_depth[v] - sub.str_depth[p])
            )
            if sub.weight[v] != expect:
                failures.append(f"trie {sym}: weight at node {v} breaks telescoping")
                break
        # gap lcps recomputed with the run walker, then interval mins
        gaps = [
            suffix_lcp(engine.first, engine.second, a, b)
            for a, b in zip(sub.leaf_refs, sub.leaf_refs[1:])
        ]
        depths = [
            sum(r.length for r in order.suffix_runs(ref)) for ref in sub.leaf_refs
        ]
        failures.extend(
            _interval_min_mismatches(
                f"trie {sym}",
                sub.parent,
                sub.str_depth,
                sub.is_leaf,
                sub.leaves,
                depths,
                gaps,
            )
        )
    return failures


def run_verification(
    seed: int = 42,
    trials: int = 100,
    n_max: int = 500,
    *,
    engine_factory=AcsEngine,
    deep: bool = True,
) -> VerifyReport:
    """Run seeded random trials; stop at the first failing pair."""
    rng = random.Random(seed)
    cap = max(n_max, DEFAULT_BUDGET.max_len)
    budget = OracleBudget(max_len=cap, max_pair_product=cap * cap)
    for trial in range(trials):
        alphabet_size = ALPHABET_SIZES[trial % len(ALPHABET_SIZES)]
        mean_run = RUN_LENGTH_MEANS[(trial // len(ALPHABET_SIZES)) % len(RUN_LENGTH_MEANS)]
        x_text = random_text(rng, rng.randint(1, n_max), alphabet_size, mean_run)
        y_text = random_text(rng, rng.randint(1, n_max), alphabet_size, mean_run)
        alphabet = Alphabet.for_texts([x_text, y_text])
        first = encode(x_text, f"X{trial}", alphabet)
        second = encode(y_text, f"Y{trial}", alphabet, sentinel=SENTINEL_SECOND)
        failures = check_pair(
            first, second, engine_factory=engine_factory, budget=budget, deep=deep
        )
        if failures:
            record = rle_record(first, alphabet) + "\n" + rle_record(second, alphabet)
            return VerifyReport(
                passed=trial,
                total=trials,
                failure=f"trial {trial}: " + "; ".join(failures),
                failure_record=record,
            )
    return VerifyReport(passed=trials, total=trials)
