"""Greedy mask construction with hypergraph preprocessing, plus a baseline.

When every remaining edge is larger than the section size being tried,
the score

    s(u) = |E_u| * (sum of w(e) for e in E_u) / (sum of |e| for e in E_u)

favours nodes sitting in many short, heavy edges; removing the best node
shrinks edges until one fits.  The greedy driver alternates exact
small-section solves with such preprocessing, fixing a few positions per
iteration.  The baseline simply adds one best-scored node at a time.

Score comparisons are exact (integer cross-multiplication, or rationals
for the alternative score); no floating point is involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import NamedTuple

from .core import MaskSet, count_matches, mask_apply
from .exact import PmdmInstance, _require_feasible
from .hypergraph import WeightedHypergraph, build_hypergraph, heaviest_k_section

Weightings = dict[int, int]


@dataclass(frozen=True)
class GreedyConfig:
    """Per-iteration section budget and an optional iteration cap."""

    tau: int = 3
    max_iterations: int | None = None
    use_alternative_score: bool = False

    def __post_init__(self):
        if self.tau < 1:
            raise ValueError("tau must be at least 1")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


class ScoredNode(NamedTuple):
    node: int
    score: Fraction


class HeuristicResult(NamedTuple):
    mask: MaskSet
    iterations: int


def node_scores(
    edges: Weightings, use_alternative_score: bool = False
) -> list[ScoredNode]:
    """Exact scores for every node appearing in at least one edge."""
    stats: dict[int, list] = {}
    if use_alternative_score:
        for bits, w in edges.items():
            size = bits.bit_count()
            share = Fraction(w, size)
            b = bits
            while b:
                u = b.bit_length()
                stats.setdefault(u, [Fraction(0)])[0] += share
                b &= ~(1 << (u - 1))
        return sorted(ScoredNode(u, s[0]) for u, s in stats.items())
    for bits, w in edges.items():
        size = bits.bit_count()
        b = bits
        while b:
            u = b.bit_length()
            st = stats.setdefault(u, [0, 0, 0])
            st[0] += 1
            st[1] += w
            st[2] += size
            b &= ~(1 << (u - 1))
    return sorted(
        ScoredNode(u, Fraction(cnt * sw, sl)) for u, (cnt, sw, sl) in stats.items()
    )


def _max_score_node(edges: Weightings, use_alternative_score: bool) -> int:
    """Best-scored node, smallest position on ties; hot path avoids Fractions."""
    if use_alternative_score:
        scored = node_scores(edges, use_alternative_score=True)
        return max(scored, key=lambda sn: (sn.score, -sn.node)).node
    stats: dict[int, list] = {}
    for bits, w in edges.items():
        size = bits.bit_count()
        b = bits
        while b:
            u = b.bit_length()
            st = stats.setdefault(u, [0, 0, 0])
            st[0] += 1
            st[1] += w
            st[2] += size
            b &= ~(1 << (u - 1))
    best_u = None
    best = (0, 0, 1)
    for u in sorted(stats):
        cnt, sw, sl = stats[u]
        # cnt*sw/sl > best iff cnt*sw*best_sl > best_cnt*best_sw*sl
        if best_u is None or cnt * sw * best[2] > best[0] * best[1] * sl:
            best_u = u
            best = (cnt, sw, sl)
    assert best_u is not None
    return best_u


def _delete_node(edges: Weightings, base: int, node: int) -> tuple[Weightings, int]:
    """Drop a node from every edge; emptied edges feed the base weight,
    colliding edges merge by summing."""
    keep = ~(1 << (node - 1))
    out: Weightings = {}
    for bits, w in edges.items():
        reduced = bits & keep
        if reduced == 0:
            base += w
        else:
            out[reduced] = out.get(reduced, 0) + w
    return out, base


def preprocess(
    h: WeightedHypergraph, k: int, use_alternative_score: bool = False
) -> tuple[WeightedHypergraph, MaskSet]:
    """Remove best-scored nodes until an edge of size at most ``k`` exists.

    Returns the reduced hypergraph and the removed positions.  A
    hypergraph that already has a small enough edge (or none at all) is
    returned unchanged.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    edges = dict(h.edges)
    base = h.base_weight
    removed = 0
    while edges and min(bits.bit_count() for bits in edges) > k:
        u = _max_score_node(edges, use_alternative_score)
        edges, base = _delete_node(edges, base, u)
        removed |= 1 << (u - 1)
    if removed == 0:
        return h, MaskSet()
    nodes = tuple(v for v in h.nodes if not removed >> (v - 1) & 1)
    return (
        WeightedHypergraph(h.node_count, edges, base, nodes),
        MaskSet.from_bits(removed),
    )


def greedy_pmdm(inst: PmdmInstance, cfg: GreedyConfig = GreedyConfig()) -> HeuristicResult:
    """Fix up to ``tau`` positions per iteration via exact small sections.

    Each iteration rebuilds the mismatch hypergraph of the partially
    masked query, tries section sizes 1..tau (preprocessing whenever no
    edge is small enough), and stops at the smallest feasible combined
    mask; otherwise it commits the tau-sized attempt and continues.  When
    the optimum is at most tau the first iteration returns it exactly.
    """
    _require_feasible(inst.threshold, inst.dictionary.size)
    dictionary, query, z = inst.dictionary, inst.query, inst.threshold
    solved = MaskSet()
    if count_matches(dictionary, mask_apply(query, solved)) >= z:
        return HeuristicResult(solved, 0)
    limit = cfg.max_iterations
    if limit is None:
        limit = ceil(dictionary.length / cfg.tau)
    for iteration in range(1, limit + 1):
        h = build_hypergraph(dictionary, mask_apply(query, solved))
        candidates: list[MaskSet] = []
        fallback: MaskSet | None = None
        for k in range(1, min(cfg.tau, len(h.nodes)) + 1):
            hk, removed = preprocess(h, k, cfg.use_alternative_score)
            size = min(k, len(hk.nodes))
            if size == 0:
                continue
            section = heaviest_k_section(hk.restricted(size), size)
            attempt = removed | section.nodes
            if section.weight >= z:
                candidates.append(attempt)
            fallback = attempt
        if candidates:
            best = min(candidates, key=lambda m: (len(m), m.positions))
            return HeuristicResult(solved | best, iteration)
        if fallback is None or not fallback:
            raise AssertionError("no progress possible; unreachable for z <= d")
        solved = solved | fallback
        if count_matches(dictionary, mask_apply(query, solved)) >= z:
            return HeuristicResult(solved, iteration)
    raise AssertionError("iteration cap reached without a feasible mask")


def baseline_pmdm(
    inst: PmdmInstance, use_alternative_score: bool = False
) -> HeuristicResult:
    """Add one best-scored node at a time until the threshold is met."""
    _require_feasible(inst.threshold, inst.dictionary.size)
    dictionary, query, z = inst.dictionary, inst.query, inst.threshold
    if count_matches(dictionary, mask_apply(query, MaskSet())) >= z:
        return HeuristicResult(MaskSet(), 0)
    h = build_hypergraph(dictionary, query)
    edges = dict(h.edges)
    base = h.base_weight
    picked = 0
    iterations = 0
    while edges:
        u = _max_score_node(edges, use_alternative_score)
        picked |= 1 << (u - 1)
        iterations += 1
        edges, base = _delete_node(edges, base, u)
        if count_matches(dictionary, mask_apply(query, MaskSet.from_bits(picked))) >= z:
            return HeuristicResult(MaskSet.from_bits(picked), iterations)
    raise AssertionError("edges exhausted before reaching threshold; z <= d violated")
