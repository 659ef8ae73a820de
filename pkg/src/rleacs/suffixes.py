"""Suffix ordering of a run-length encoded pair, and the compact trie over it.

Only suffixes that begin at run boundaries take part: sequence s contributes
one suffix per run, identified by SuffixRef(s, k) for the suffix starting at
run k (1-based, sentinel run included). All depths and lcp values here are
decoded lengths, never run counts, so they may approach the 2^62 length bound
and are kept as Python ints except inside the numpy sorting kernels, whose
values (signed run lengths, dense ranks) individually fit in int64.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from typing import NamedTuple

import numpy as np

from rleacs.rle import RleSeq, Run, ensure_pair


class SuffixRef(NamedTuple):
    """Suffix handle: sequence index (0 or 1) and 1-based starting run."""

    seq: int
    run: int


@dataclass(frozen=True)
class SuffixOrder:
    """All run-start suffixes of a pair, sorted by decoded string order.

    dlcp[k] is the decoded longest-common-prefix length of the suffixes at
    ranks k and k+1; suffix_lengths[k] is the decoded length (sentinel
    included) of the suffix at rank k.
    """

    first: RleSeq
    second: RleSeq
    refs: list[SuffixRef]
    dlcp: list[int]
    suffix_lengths: list[int]

    def __len__(self) -> int:
        return len(self.refs)

    def runs_of(self, seq_index: int) -> tuple[Run, ...]:
        return (self.first, self.second)[seq_index].runs

    def suffix_runs(self, ref: SuffixRef) -> tuple[Run, ...]:
        return self.runs_of(ref.seq)[ref.run - 1 :]


@dataclass(frozen=True)
class Trie:
    """Compact trie over all run-start suffixes, leaves in suffix order.

    Node arrays are indexed by node id; rank-indexed leaf arrays carry the
    preceding-run annotation of each suffix: the symbol and length of the run
    just before the suffix start (sym -1 / freq 0 for each sequence's first
    suffix, which has no preceding run).
    """

    order: SuffixOrder
    parent: list[int]
    str_depth: list[int]
    node_depth: list[int]
    is_leaf: list[bool]
    leaves: list[int]
    leaf_sym: list[int]
    leaf_freq: list[int]
    leaf_from_second: list[bool]

    @property
    def node_count(self) -> int:
        return len(self.parent)


def longest_run_table(seq: RleSeq) -> dict[int, int]:
    """Symbol id -> longest run of that symbol in the sequence body."""
    table: dict[int, int] = {}
    for sym, length in seq.content_runs:
        if length > table.get(sym, 0):
            table[sym] = length
    return table


def suffix_compare(first: RleSeq, second: RleSeq, a: SuffixRef, b: SuffixRef) -> int:
    """Three-way decoded-order comparison of two suffixes, by walking runs.

    Runs are consumed in lockstep with partial remainders, so the cost is
    linear in runs rather than decoded characters.
    """
    runs_a = (first, second)[a.seq].runs[a.run - 1 :]
    runs_b = (first, second)[b.seq].runs[b.run - 1 :]
    ia = ib = 0
    rem_a = rem_b = 0
    while ia < len(runs_a) and ib < len(runs_b):
        sym_a, len_a = runs_a[ia]
        sym_b, len_b = runs_b[ib]
        if rem_a == 0:
            rem_a = len_a
        if rem_b == 0:
            rem_b = len_b
        if sym_a != sym_b:
            return -1 if sym_a < sym_b else 1
        step = min(rem_a, rem_b)
        rem_a -= step
        rem_b -= step
        if rem_a == 0:
            ia += 1
        if rem_b == 0:
            ib += 1
    if ia < len(runs_a) or rem_a:
        return 1
    if ib < len(runs_b) or rem_b:
        return -1
    return 0


def suffix_lcp(first: RleSeq, second: RleSeq, a: SuffixRef, b: SuffixRef) -> int:
    """Decoded longest-common-prefix length of two suffixes, by walking runs."""
    runs_a = (first, second)[a.seq].runs[a.run - 1 :]
    runs_b = (first, second)[b.seq].runs[b.run - 1 :]
    ia = ib = 0
    rem_a = rem_b = 0
    common = 0
    while ia < len(runs_a) and ib < len(runs_b):
        sym_a, len_a = runs_a[ia]
        sym_b, len_b = runs_b[ib]
        if rem_a == 0:
            rem_a = len_a
        if rem_b == 0:
            rem_b = len_b
        if sym_a != sym_b:
            break
        step = min(rem_a, rem_b)
        common += step
        rem_a -= step
        rem_b -= step
        if rem_a == 0:
            ia += 1
        if rem_b == 0:
            ib += 1
    return common


def _token_columns(first: RleSeq, second: RleSeq):
    """Flatten both run lists into per-token sort-key columns.

    A token's key (sym, group, signed, next_sym) compares two suffixes exactly
    as their decoded strings do whenever the keys differ, given maximal runs:

    - differing sym: the first decoded character decides;
    - equal sym, differing group: a run followed by a smaller symbol (group 0)
      precedes one followed by a larger symbol (group 1) no matter the lengths,
      because the comparison falls off the shorter run into that symbol;
    - same group: shorter runs first in group 0 (+length), longer runs first
      in group 1 (-length);
    - all else equal: the following symbols get compared directly.

    Sentinel tokens get (sym, 0, 0, -1); their sym (0 or 1) is unique in the
    whole token string and below every body symbol.
    """
    syms: list[int] = []
    groups: list[int] = []
    signed: list[int] = []
    nexts: list[int] = []
    decoded: list[int] = []
    for seq in (first, second):
        runs = seq.runs
        last = len(runs) - 1
        for k, (sym, length) in enumerate(runs):
            if k == last:
                syms.append(sym)
                groups.append(0)
                signed.append(0)
                nexts.append(-1)
                decoded.append(1)
            else:
                nxt = runs[k + 1].sym
                group = 0 if nxt < sym else 1
                syms.append(sym)
                groups.append(group)
                signed.append(length if group == 0 else -length)
                nexts.append(nxt)
                decoded.append(length)
    return syms, groups, signed, nexts, decoded


def _dense_rank(columns: list[np.ndarray]) -> np.ndarray:
    """Dense ranks of row tuples; columns[0] is the most significant key."""
    n = len(columns[0])
    idx = np.lexsort(tuple(reversed(columns)))
    bump = np.zeros(n, dtype=np.int64)
    for col in columns:
        sorted_col = col[idx]
        bump[1:] |= sorted_col[1:] != sorted_col[:-1]
    rank = np.empty(n, dtype=np.int64)
    rank[idx] = np.cumsum(bump)
    return rank


def _prefix_double(rank0: np.ndarray) -> np.ndarray:
    """Ranks of all token-string suffixes by repeated doubling from rank0."""
    n = len(rank0)
    rank = rank0.copy()
    step = 1
    while int(rank.max()) != n - 1:
        if step > 2 * n:
            raise AssertionError("suffix ranks failed to become distinct")
        shifted = np.full(n, -1, dtype=np.int64)
        shifted[: n - step] = rank[step:]
        idx = np.lexsort((shifted, rank))
        bump = np.zeros(n, dtype=np.int64)
        bump[1:] = (rank[idx[1:]] != rank[idx[:-1]]) | (shifted[idx[1:]] != shifted[idx[:-1]])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[idx] = np.cumsum(bump)
        rank = new_rank
        step *= 2
    return rank


def _token_lcp(order: list[int], rank: list[int], rank0: list[int]) -> list[int]:
    """Per adjacent rank pair, the count of leading tokens with equal keys.

    Kasai's sweep; equality is key equality (rank0), the same relation that
    defines the order, which the h-carrying argument requires. Coarser
    relations (say, equality of raw (symbol, length) pairs) would carry stale
    h values across boundaries the order resolves by group or next-symbol.
    """
    n = len(order)
    klcp = [0] * (n - 1)
    h = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            h = 0
            continue
        j = order[r - 1]
        while i + h < n and j + h < n and rank0[i + h] == rank0[j + h]:
            h += 1
        klcp[r - 1] = h
        if h:
            h -= 1
    return klcp


def build_suffix_order(first: RleSeq, second: RleSeq) -> SuffixOrder:
    """Sort all run-start suffixes of the pair into decoded order.

    Tokens are ranked by their sort keys, the token string is suffix-sorted by
    prefix doubling, and token-level lcps are converted to decoded lengths via
    run-length prefix sums plus a min-length boundary term when the first
    key-unequal tokens still share a symbol. Unique sentinel tokens stop every
    comparison at or before a sequence boundary, so concatenating the two
    token lists is safe.
    """
    first, second = ensure_pair(first, second)
    syms, groups, signed, nexts, decoded = _token_columns(first, second)
    n = len(syms)
    nx = len(first.runs)
    columns = [
        np.array(syms, dtype=np.int64),
        np.array(groups, dtype=np.int64),
        np.array(signed, dtype=np.int64),
        np.array(nexts, dtype=np.int64),
    ]
    rank0_arr = _dense_rank(columns)
    rank_arr = _prefix_double(rank0_arr)
    order_arr = np.argsort(rank_arr)

    order = order_arr.tolist()
    rank = rank_arr.tolist()
    rank0 = rank0_arr.tolist()
    klcp = _token_lcp(order, rank, rank0)

    # decoded prefix sums over tokens; sums can exceed int64 so stay in ints
    prefix = list(accumulate(decoded, initial=0))
    total_first = prefix[nx]
    total_all = prefix[n]

    refs = []
    suffix_lengths = []
    for i in order:
        if i < nx:
            refs.append(SuffixRef(0, i + 1))
            suffix_lengths.append(total_first - prefix[i])
        else:
            refs.append(SuffixRef(1, i - nx + 1))
            suffix_lengths.append(total_all - prefix[i])

    dlcp = []
    for r in range(n - 1):
        a = order[r]
        b = order[r + 1]
        t = klcp[r]
        d = prefix[a + t] - prefix[a]
        if syms[a + t] == syms[b + t]:
            d += min(decoded[a + t], decoded[b + t])
        dlcp.append(d)

    return SuffixOrder(
        first=first,
        second=second,
        refs=refs,
        dlcp=dlcp,
        suffix_lengths=suffix_lengths,
    )


def _sweep_compact_trie(leaf_depths: list[int], gaps: list[int]):
    """Build a compact trie from ordered leaf depths and between-leaf lcps.

    One left-to-right sweep with a stack holding the rightmost root path in
    strictly increasing str_depth. A node's parent is fixed the moment it
    leaves the stack. Returns (parent, str_depth, leaf_nodes); node 0 is the
    root at str_depth 0.
    """
    parent = [-1]
    str_depth = [0]
    stack = [0]
    leaf_nodes = []
    for k, depth in enumerate(leaf_depths):
        cut = gaps[k - 1] if k else 0
        last = -1
        while str_depth[stack[-1]] > cut:
            node = stack.pop()
            if last != -1:
                parent[last] = node
            last = node
        top = stack[-1]
        if last != -1:
            if str_depth[top] == cut:
                parent[last] = top
            else:
                mid = len(parent)
                parent.append(-1)
                str_depth.append(cut)
                parent[last] = mid
                stack.append(mid)
        leaf = len(parent)
        parent.append(-1)
        str_depth.append(depth)
        leaf_nodes.append(leaf)
        stack.append(leaf)
    last = -1
    while stack:
        node = stack.pop()
        if last != -1:
            parent[last] = node
        last = node
    return parent, str_depth, leaf_nodes


def _node_depths(parent: list[int], str_depth: list[int]) -> list[int]:
    """Nodes on the root path, root = 1; parents have strictly smaller str_depth."""
    node_depth = [0] * len(parent)
    for v in sorted(range(len(parent)), key=str_depth.__getitem__):
        p = parent[v]
        node_depth[v] = 1 if p < 0 else node_depth[p] + 1
    return node_depth


def build_trie(order: SuffixOrder) -> Trie:
    """Compact trie over the ordered suffixes, with preceding-run leaf data."""
    parent, str_depth, leaf_nodes = _sweep_compact_trie(order.suffix_lengths, order.dlcp)
    node_depth = _node_depths(parent, str_depth)
    is_leaf = [False] * len(parent)
    for v in leaf_nodes:
        is_leaf[v] = True
    leaf_sym = []
    leaf_freq = []
    leaf_from_second = []
    for ref in order.refs:
        if ref.run >= 2:
            prev = order.runs_of(ref.seq)[ref.run - 2]
            leaf_sym.append(prev.sym)
            leaf_freq.append(prev.length)
        else:
            leaf_sym.append(-1)
            leaf_freq.append(0)
        leaf_from_second.append(ref.seq == 1)
    return Trie(
        order=order,
        parent=parent,
        str_depth=str_depth,
        node_depth=node_depth,
        is_leaf=is_leaf,
        leaves=leaf_nodes,
        leaf_sym=leaf_sym,
        leaf_freq=leaf_freq,
        leaf_from_second=leaf_from_second,
    )


class RangeMin:
    """Immutable range-minimum index over an int array, inclusive bounds."""

    def __init__(self, values) -> None:
        arr = np.asarray(values, dtype=np.int64)
        rows = [arr]
        span = 1
        while 2 * span <= len(arr):
            prev = rows[-1]
            rows.append(np.minimum(prev[: len(prev) - span], prev[span:]))
            span *= 2
        self._rows = rows

    def query(self, lo: int, hi: int) -> int:
        k = (hi - lo + 1).bit_length() - 1
        row = self._rows[k]
        return int(min(row[lo], row[hi - (1 << k) + 1]))

    def query_many(self, los: np.ndarray, his: np.ndarray) -> list[int]:
        lengths = his - los + 1
        # exact floor(log2) via the float exponent; lengths are far below 2^53
        ks = np.frexp(lengths.astype(np.float64))[1] - 1
        out = np.empty(len(los), dtype=np.int64)
        for k in np.unique(ks):
            row = self._rows[k]
            mask = ks == k
            lo = los[mask]
            hi = his[mask]
            out[mask] = np.minimum(row[lo], row[hi - (1 << int(k)) + 1])
        return out.tolist()
