"""Independent brute-force reference implementations.

Everything here works on decoded text in quadratic-or-worse time and shares no
logic with the fast path. These are trusted baselines for testing and for the
randomized cross-check harness, guarded by explicit size budgets so a typo in
a caller cannot silently burn minutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from rleacs.rle import RleSeq, decode_ids, ensure_pair
from rleacs.suffixes import SuffixOrder, SuffixRef


@dataclass(frozen=True)
class OracleBudget:
    """Hard ceilings on the decoded sizes the oracle will accept."""

    max_len: int = 2000
    max_pair_product: int = 4_000_000

    def check(self, x_len: int, y_len: int) -> None:
        if x_len > self.max_len or y_len > self.max_len:
            raise ValueError(
                f"oracle budget exceeded: lengths ({x_len}, {y_len}), max {self.max_len}"
            )
        if x_len * y_len > self.max_pair_product:
            raise ValueError(
                f"oracle budget exceeded: product {x_len * y_len} > {self.max_pair_product}"
            )


DEFAULT_BUDGET = OracleBudget()


def _scan_match_lengths(x_text: str, y_text: str) -> list[int]:
    """Character-at-a-time definition, kept as a cross-check for the DP."""
    out = []
    for i in range(len(x_text)):
        best = 0
        for j in range(len(y_text)):
            k = 0
            while i + k < len(x_text) and j + k < len(y_text) and x_text[i + k] == y_text[j + k]:
                k += 1
            best = max(best, k)
        out.append(best)
    return out


def brute_match_lengths(
    x_text: str, y_text: str, budget: OracleBudget = DEFAULT_BUDGET
) -> list[int]:
    """For each start i in x, the longest prefix of x[i:] occurring anywhere in y.

    Row DP over match-extension counts: T[i][j] is the length of the longest
    common prefix of x[i:] and y[j:], computed from row i+1.
    """
    budget.check(len(x_text), len(y_text))
    if not x_text or not y_text:
        return [0] * len(x_text)
    x = np.frombuffer(x_text.encode("utf-32-le"), dtype=np.uint32)
    y = np.frombuffer(y_text.encode("utf-32-le"), dtype=np.uint32)
    lengths = np.zeros(len(x), dtype=np.int64)
    row = np.zeros(len(y), dtype=np.int64)
    for i in range(len(x) - 1, -1, -1):
        shifted = np.empty_like(row)
        shifted[:-1] = row[1:]
        shifted[-1] = 0
        row = np.where(y == x[i], shifted + 1, 0)
        lengths[i] = row.max()
    return lengths.tolist()


def brute_acs(x_text: str, y_text: str, budget: OracleBudget = DEFAULT_BUDGET) -> Fraction:
    """Average match length, as an exact rational."""
    lengths = brute_match_lengths(x_text, y_text, budget)
    return Fraction(sum(lengths), len(lengths))


def _lcp(a: str, b: str) -> int:
    """Longest common prefix length via doubling probes and slice equality.

    Slice comparisons run at C speed, so the cost is O(log L) comparisons of
    O(L) characters rather than a Python-level loop per character.
    """
    if not a or not b or a[0] != b[0]:
        return 0
    bound = min(len(a), len(b))
    hi = 1
    while hi < bound and a[:hi] == b[:hi]:
        hi *= 2
    hi = min(hi, bound)
    if a[:hi] == b[:hi]:
        return hi
    lo = 1
    # invariant: prefixes of length lo are equal, prefixes of length hi differ
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def brute_suffix_sort(
    first: RleSeq, second: RleSeq, budget: OracleBudget = DEFAULT_BUDGET
) -> SuffixOrder:
    """Sort all run-start suffixes of the decoded pair by plain string order.

    Produces the same SuffixOrder shape as the fast builder so the two can be
    compared field by field.
    """
    first, second = ensure_pair(first, second)
    budget.check(first.content_length, second.content_length)
    texts = (decode_ids(first), decode_ids(second))
    entries: list[tuple[str, SuffixRef]] = []
    for seq_index, seq in enumerate((first, second)):
        text = texts[seq_index]
        pos = 0
        for run_index, run in enumerate(seq.runs, start=1):
            entries.append((text[pos:], SuffixRef(seq_index, run_index)))
            pos += run.length
    entries.sort(key=lambda e: e[0])
    refs = [ref for _, ref in entries]
    dlcp = [_lcp(entries[k - 1][0], entries[k][0]) for k in range(1, len(entries))]
    suffix_lengths = [len(text) for text, _ in entries]
    return SuffixOrder(
        first=first,
        second=second,
        refs=refs,
        dlcp=dlcp,
        suffix_lengths=suffix_lengths,
    )
