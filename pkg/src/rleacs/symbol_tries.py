"""Per-symbol tries over suffixes grouped by their preceding run's symbol.

For each symbol, the annotated leaves of the main trie are re-assembled into
a compact trie of their own. Every node carries freq, the largest length of a
preceding second-sequence run among the leaves below it, and weight, a running
sum that turns "sum of ancestor depths over a range of thresholds" queries
into two node lookups. Ancestor searches climb with binary lifting, so each
query costs O(log N).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from rleacs.suffixes import RangeMin, SuffixRef, Trie, _sweep_compact_trie


@dataclass
class SymbolTrie:
    """Compact trie over the suffixes preceded by a run of one symbol."""

    sym: int
    parent: list[int]
    str_depth: list[int]
    is_leaf: list[bool]
    leaves: list[int]
    leaf_refs: list[SuffixRef]
    leaf_from_second: list[bool]
    leaf_run_len: list[int]
    ref_to_leaf: dict[SuffixRef, int]
    node_depth: list[int] = field(default_factory=list)
    freq: list[int] = field(default_factory=list)
    weight: list[int] = field(default_factory=list)
    _up: list[list[int]] = field(default_factory=list)

    @property
    def node_count(self) -> int:
        return len(self.parent)

    def ancestor_at_depth(self, v: int, depth: int) -> int:
        """The ancestor of v with the given node_depth (<= v's own)."""
        delta = self.node_depth[v] - depth
        row = 0
        while delta:
            if delta & 1:
                v = self._up[row][v]
            delta >>= 1
            row += 1
        return v

    def deepest_freq_ancestor(self, leaf: int, threshold: int) -> int | None:
        """Deepest proper ancestor of leaf with freq >= threshold, if any.

        freq never decreases toward the root, so the qualifying ancestors form
        a prefix of the root path; the climb takes the largest lifting jumps
        that stay strictly below the threshold, then steps to the parent.
        """
        v = self.parent[leaf]
        if self.freq[v] >= threshold:
            return v
        for row in reversed(self._up):
            a = row[v]
            if a >= 0 and self.freq[a] < threshold:
                v = a
        p = self.parent[v]
        return p if p >= 0 else None

    def deepest_y_ancestor(self, leaf: int) -> int | None:
        """Deepest proper ancestor with any second-sequence leaf below it."""
        return self.deepest_freq_ancestor(leaf, 1)


def annotate(trie: SymbolTrie) -> SymbolTrie:
    """Fill freq, weight, node_depth, and the lifting rows, in place.

    freq flows bottom-up as a subtree maximum over second-sequence leaf run
    lengths; weight flows top-down as weight(parent) + freq(v) * edge length.
    Processing nodes by str_depth orders parents before children (edges have
    strictly positive decoded length).
    """
    n = len(trie.parent)
    by_depth = sorted(range(n), key=trie.str_depth.__getitem__)

    freq = [0] * n
    for leaf, from_second, run_len in zip(
        trie.leaves, trie.leaf_from_second, trie.leaf_run_len
    ):
        if from_second:
            freq[leaf] = run_len
    for v in reversed(by_depth):
        p = trie.parent[v]
        if p >= 0 and freq[v] > freq[p]:
            freq[p] = freq[v]

    node_depth = [0] * n
    weight = [0] * n
    for v in by_depth:
        p = trie.parent[v]
        if p < 0:
            node_depth[v] = 1
            weight[v] = 0
        else:
            node_depth[v] = node_depth[p] + 1
            weight[v] = weight[p] + freq[v] * (trie.str_depth[v] - trie.str_depth[p])

    up = [trie.parent]
    max_depth = max(node_depth)
    while (1 << len(up)) < max_depth:
        prev = up[-1]
        up.append([prev[a] if a >= 0 else -1 for a in prev])

    trie.freq = freq
    trie.weight = weight
    trie.node_depth = node_depth
    trie._up = up
    return trie


def extract_symbol_tries(trie: Trie) -> dict[int, SymbolTrie]:
    """Group annotated leaves by preceding-run symbol and rebuild tries.

    Leaves keep their global order; the lcp between two selected neighbors is
    the minimum of the main order's dlcp over the gap, answered by a sparse
    range-minimum table.
    """
    order = trie.order
    by_sym: dict[int, list[int]] = {}
    for rank, sym in enumerate(trie.leaf_sym):
        if sym >= 0:
            by_sym.setdefault(sym, []).append(rank)

    rmq = RangeMin(order.dlcp) if order.dlcp else None
    tries: dict[int, SymbolTrie] = {}
    for sym, ranks in by_sym.items():
        if len(ranks) > 1:
            los = np.array(ranks[:-1], dtype=np.int64)
            his = np.array(ranks[1:], dtype=np.int64) - 1
            gaps = rmq.query_many(los, his)
        else:
            gaps = []
        depths = [order.suffix_lengths[k] for k in ranks]
        parent, str_depth, leaf_nodes = _sweep_compact_trie(depths, gaps)
        is_leaf = [False] * len(parent)
        for v in leaf_nodes:
            is_leaf[v] = True
        leaf_refs = [order.refs[k] for k in ranks]
        sub = SymbolTrie(
            sym=sym,
            parent=parent,
            str_depth=str_depth,
            is_leaf=is_leaf,
            leaves=leaf_nodes,
            leaf_refs=leaf_refs,
            leaf_from_second=[trie.leaf_from_second[k] for k in ranks],
            leaf_run_len=[trie.leaf_freq[k] for k in ranks],
            ref_to_leaf=dict(zip(leaf_refs, leaf_nodes)),
        )
        tries[sym] = annotate(sub)
    return tries
