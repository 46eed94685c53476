"""Instance generators translating between problem formulations.

* cliques: a graph becomes a binary-alphabet instance with one string per
  edge, so a k-clique exists exactly when k masked positions can reach
  k*(k-1)/2 matches;
* minimum union: choosing z sets with the smallest union corresponds
  one-to-one with masking the fewest positions to match z entries, in
  both directions, with solution extraction for the round trip;
* an exact enumeration solver for minimum union, used to cross-check the
  mask solvers on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .core import CapacityError, Dictionary, MaskSet
from .exact import PmdmInstance


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 1..node_count."""

    node_count: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]]):
        if node_count < 1:
            raise ValueError("node_count must be positive")
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (1 <= u <= node_count and 1 <= v <= node_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_file(cls, path) -> "Graph":
        """First line: node count; then one ``u v`` pair per line."""
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh if line.strip()]
        if not lines:
            raise ValueError("empty graph file")
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            u, v = line.split()
            edges.append((int(u), int(v)))
        return cls(n, edges)


@dataclass(frozen=True)
class MuInstance:
    """Choose ``threshold`` of the sets so their union is smallest."""

    universe_size: int
    sets: tuple[frozenset[int], ...]
    threshold: int

    def __init__(self, universe_size: int, sets: Sequence[Iterable[int]], threshold: int):
        sets = tuple(frozenset(s) for s in sets)
        object.__setattr__(self, "universe_size", universe_size)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "threshold", threshold)
        if universe_size < 0:
            raise ValueError("universe size must be non-negative")
        for i, s in enumerate(sets):
            for e in s:
                if not 1 <= e <= universe_size:
                    raise ValueError(f"set {i} contains {e}, outside the universe")
        if not 1 <= threshold <= len(sets):
            raise ValueError(f"threshold must be in [1, {len(sets)}]")


class MuSolution(NamedTuple):
    indices: list[int]
    union: frozenset[int]


def clique_to_pmdm(graph: Graph, k: int) -> PmdmInstance:
    """One all-'a' query; per edge a string with 'b' at both endpoints.

    Masking k positions can reach k*(k-1)/2 matches exactly when those
    positions induce a clique, since a string matches once both its 'b'
    positions are masked.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if not graph.edges:
        raise ValueError("graph has no edges; the derived dictionary would be empty")
    n = graph.node_count
    entries = []
    for u, v in sorted(graph.edges):
        entries.append("a" * (u - 1) + "b" + "a" * (v - u - 1) + "b" + "a" * (n - v))
    return PmdmInstance(Dictionary(entries), "a" * n, k * (k - 1) // 2)


def pmdm_to_mu(inst: PmdmInstance) -> MuInstance:
    """Per entry, the set of positions where it differs from the query."""
    sets = []
    q = inst.query
    for entry in inst.dictionary:
        sets.append(frozenset(i + 1 for i, (a, b) in enumerate(zip(q, entry)) if a != b))
    return MuInstance(inst.dictionary.length, sets, inst.threshold)


def mu_to_pmdm(inst: MuInstance) -> PmdmInstance:
    """Rank-compress the used elements; sets become 'b' positions.

    The optimal mask size of the result equals the optimal union size of
    the input.  With no used elements at all the strings are padded to
    length one so a dictionary exists; the correspondence is unaffected.
    """
    used = sorted(set().union(*inst.sets)) if inst.sets else []
    rank = {e: i + 1 for i, e in enumerate(used)}
    length = max(1, len(used))
    entries = []
    for s in inst.sets:
        row = ["a"] * length
        for e in s:
            row[rank[e] - 1] = "b"
        entries.append("".join(row))
    return PmdmInstance(Dictionary(entries), "a" * length, inst.threshold)


def mu_bruteforce(inst: MuInstance, budget: int = 2_000_000) -> MuSolution:
    """Enumerate every index subset of the target size; smallest union wins,
    ties by lexicographic index list."""
    d = len(inst.sets)
    z = inst.threshold
    if comb(d, z) > budget:
        raise CapacityError(
            f"C({d},{z}) = {comb(d, z)} subsets exceed the enumeration budget {budget}"
        )
    best_indices = None
    best_union: frozenset[int] = frozenset()
    for indices in combinations(range(d), z):
        union = frozenset().union(*(inst.sets[i] for i in indices))
        if best_indices is None or len(union) < len(best_union):
            best_indices = list(indices)
            best_union = union
    assert best_indices is not None
    return MuSolution(best_indices, best_union)


def extract_mu_solution(inst: MuInstance, mask: MaskSet) -> list[int]:
    """First ``threshold`` set indices whose sets sit inside the mask."""
    allowed = set(mask.positions)
    chosen = [i for i, s in enumerate(inst.sets) if s <= allowed]
    if len(chosen) < inst.threshold:
        raise ValueError(
            f"mask covers only {len(chosen)} sets, need {inst.threshold}; "
            "not a valid witness"
        )
    return chosen[: inst.threshold]
