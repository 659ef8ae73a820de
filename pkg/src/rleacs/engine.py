"""Average common substring measure and distance over run-length encoded pairs.

The engine computes, for every position p of the first sequence, the longest
prefix of first[p:] occurring anywhere in the second sequence, without ever
decoding. Positions are processed one run at a time: the answers within a run
follow a closed form built from two ancestor lookups in the per-symbol trie,
so a pair costs O(N log N) for N total runs. All accumulation is exact integer
arithmetic; floats appear only in the final distance value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from rleacs.rle import RleSeq, ensure_pair
from rleacs.suffixes import SuffixRef, build_suffix_order, build_trie, longest_run_table
from rleacs.symbol_tries import extract_symbol_tries

DEFAULT_POSITION_CAP = 1_000_000

LOG_FUNCTIONS = {"e": math.log, "2": math.log2, "10": math.log10}


@dataclass(frozen=True)
class AcsResult:
    """Sum and average of per-position best match lengths."""

    lsum: int
    x: int
    value: Fraction

    @property
    def as_float(self) -> float:
        return self.lsum / self.x


@dataclass(frozen=True)
class DistResult:
    """Symmetric distance with the four average-match values behind it."""

    value: float
    log_base: str
    acs_xy: Fraction
    acs_yx: Fraction
    acs_xx: Fraction
    acs_yy: Fraction


class AcsEngine:
    """Per-ordered-pair state: suffix order, tries, and the query machinery.

    Instances are immutable after construction and safe to query from
    multiple threads. Build one engine per ordered pair (first is the
    sequence whose positions are scored against second).
    """

    def __init__(self, first: RleSeq, second: RleSeq) -> None:
        first, second = ensure_pair(first, second)
        self.first = first
        self.second = second
        self.order = build_suffix_order(first, second)
        self.trie = build_trie(self.order)
        self.max_run = longest_run_table(second)
        self.tries = extract_symbol_tries(self.trie)

    def run_sum(self, i: int) -> int:
        """Sum of best match lengths over the positions of the i-th run.

        For a run of symbol s and length f whose positions have h = f..1
        trailing copies of s, the best match at offset h is capped by m, the
        longest s-run in the second sequence: m when h > m, otherwise h plus
        the continuation depth of the deepest ancestor (of the following
        suffix's leaf in the s-trie) still supported by a second-sequence run
        of at least h. Summing the ancestor depths over h telescopes into two
        weight lookups.
        """
        sym, f = self.first.runs[i - 1]
        m = self.max_run.get(sym, 0)
        if m == 0:
            return 0
        trie = self.tries[sym]
        w = trie.ref_to_leaf[SuffixRef(0, i + 1)]
        v = trie.deepest_y_ancestor(w)
        if f > m:
            return trie.weight[v] + m * f - m * (m - 1) // 2
        u = trie.deepest_freq_ancestor(w, f)
        return trie.weight[v] - trie.weight[u] + f * trie.str_depth[u] + f * (f + 1) // 2

    def total(self) -> int:
        """Sum of best match lengths over every position of the first sequence."""
        return sum(self.run_sum(i) for i in range(1, self.first.run_count + 1))

    def per_position_lengths(self, cap: int = DEFAULT_POSITION_CAP) -> list[int]:
        """Best match length at every decoded position, one ancestor query each.

        Costs O(x log N) for decoded length x, so it exists for validation
        against run_sum/total rather than for production use; the cap keeps
        accidental huge expansions from running away.
        """
        x = self.first.content_length
        if x > cap:
            raise ValueError(f"decoded length over validation cap: {x} > {cap}")
        out: list[int] = []
        for i in range(1, self.first.run_count + 1):
            sym, f = self.first.runs[i - 1]
            m = self.max_run.get(sym, 0)
            if m == 0:
                out.extend([0] * f)
                continue
            trie = self.tries[sym]
            w = trie.ref_to_leaf[SuffixRef(0, i + 1)]
            for h in range(f, 0, -1):
                if h > m:
                    out.append(m)
                else:
                    u = trie.deepest_freq_ancestor(w, h)
                    out.append(h + trie.str_depth[u])
        return out


def acs(first: RleSeq, second: RleSeq) -> AcsResult:
    """Average over first's positions of the longest match into second."""
    engine = AcsEngine(first, second)
    lsum = engine.total()
    x = engine.first.content_length
    return AcsResult(lsum=lsum, x=x, value=Fraction(lsum, x))


def acs_self(length: int) -> Fraction:
    """Average self-match value for a sequence of the given decoded length.

    Position p matches the suffix starting at p itself, of length x - p + 1;
    the average of x, x-1, ..., 1 is (x + 1) / 2.
    """
    if length < 1:
        raise ValueError("sequence too short")
    return Fraction(length + 1, 2)


def dist_value(
    x_len: int,
    y_len: int,
    acs_xy: Fraction,
    acs_yx: Fraction,
    log_base: str = "e",
) -> float:
    """Distance from the two cross average-match values and the two lengths.

    Each direction is normalized as log(other length) / average, and the two
    self-match baselines are subtracted; swapping the arguments permutes the
    two addends of each bracket, so the result is bit-identical under swap.
    """
    log = LOG_FUNCTIONS[log_base]
    cross = log(y_len) / acs_xy + log(x_len) / acs_yx
    base = log(x_len) / acs_self(x_len) + log(y_len) / acs_self(y_len)
    return 0.5 * cross - 0.5 * base


def dist(first: RleSeq, second: RleSeq, log_base: str = "e") -> DistResult:
    """Symmetric distance between two sequences.

    Degenerate inputs are rejected: decoded lengths below 2 make the
    normalization meaningless, and a pair with no common symbol has average
    match 0, which has no finite distance.
    """
    if log_base not in LOG_FUNCTIONS:
        raise ValueError(f"unknown log base {log_base!r}")
    x = first.content_length
    y = second.content_length
    if x < 2 or y < 2:
        raise ValueError("sequence too short")
    forward = acs(first, second)
    backward = acs(second, first)
    if forward.lsum == 0 or backward.lsum == 0:
        raise ValueError("no common substring")
    return DistResult(
        value=dist_value(x, y, forward.value, backward.value, log_base),
        log_base=log_base,
        acs_xy=forward.value,
        acs_yx=backward.value,
        acs_xx=acs_self(x),
        acs_yy=acs_self(y),
    )
