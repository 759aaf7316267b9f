"""Multi-rooted structures: ordered sequences of feature structures over one graph.

Indices are 1-based, matching the usual ``sigma^{i..j}`` notation; the
empty structure (no roots, no nodes) is :meth:`MultiRootedStructure.empty`.
"""

from __future__ import annotations

from typing import Union

from .errors import IndexOutOfRange
from .fs import (
    FeatureStructure,
    NoMorphism,
    RankComponents,
    Structure,
    SubsumptionMorphism,
    _paths_from,
    _require_acyclic,
    copy,
    fresh_node,
    morphism,
    rank_components,
    reachable,
    same_hierarchy,
)

__all__ = [
    "MultiRootedStructure",
    "project",
    "substructure",
    "mrs_subsumes",
    "mrs_variant",
    "mrs_paths",
    "mrs_rank",
    "mrs_rank_components",
    "rename_apart",
    "concatenate",
]


class MultiRootedStructure(Structure):
    """Ordered, repetition-free roots over a shared, possibly disconnected graph."""

    __slots__ = ()

    def __init__(self, hierarchy, roots, types, arcs=None):
        super().__init__(hierarchy, roots, types, arcs or {})

    @classmethod
    def empty(cls, hierarchy):
        return cls._make(hierarchy, (), {}, {})

    @classmethod
    def of(cls, *structures: Structure):
        """Sequence several structures, sharing whatever nodes they already share."""
        return concatenate(structures)

    def __len__(self):
        return len(self.roots)


MRS = MultiRootedStructure


def _restricted(sigma: Structure, roots, cls=MultiRootedStructure):
    keep = reachable(sigma._arcs, roots)
    types = {q: sigma._types[q] for q in keep}
    arcs = {q: sigma._arcs[q] for q in keep if q in sigma._arcs}
    return cls._make(sigma.hierarchy, tuple(roots), types, arcs)


def as_mrs(s: Structure) -> MultiRootedStructure:
    if isinstance(s, MultiRootedStructure):
        return s
    return MultiRootedStructure._make(s.hierarchy, s.roots, s._types, s._arcs)


def project(sigma: MultiRootedStructure, i: int) -> FeatureStructure:
    """The feature structure induced by the ``i``-th root (1-based)."""
    if not 1 <= i <= len(sigma.roots):
        raise IndexOutOfRange("root index %d outside 1..%d" % (i, len(sigma.roots)))
    return _restricted(sigma, (sigma.roots[i - 1],), FeatureStructure)


def substructure(sigma: MultiRootedStructure, i: int, j: int) -> MultiRootedStructure:
    """Elements ``i..j`` (inclusive, 1-based) with sharing preserved; empty if ``i > j``."""
    if i > j:
        return MultiRootedStructure.empty(sigma.hierarchy)
    n = len(sigma.roots)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexOutOfRange("sub-structure %d..%d outside 1..%d" % (i, j, n))
    return _restricted(sigma, sigma.roots[i - 1 : j])


def mrs_subsumes(sigma: Structure, rho: Structure) -> Union[SubsumptionMorphism, NoMorphism]:
    """Morphism mapping each root of ``sigma`` to the same-position root of ``rho``.

    Fails with reason ``"length-mismatch"`` when the lengths differ.
    """
    same_hierarchy(sigma, rho)
    return morphism(sigma, rho)


def mrs_variant(sigma: Structure, rho: Structure) -> bool:
    return bool(mrs_subsumes(sigma, rho)) and bool(morphism(rho, sigma))


def mrs_paths(sigma: Structure) -> frozenset:
    """All ``(path, i)`` pairs with ``path`` defined from root ``i`` (1-based)."""
    _require_acyclic(sigma)
    return frozenset((p, i) for i, r in enumerate(sigma.roots, 1) for p in _paths_from(sigma, r))


def mrs_rank_components(sigma: Structure) -> RankComponents:
    return rank_components(sigma)


def mrs_rank(sigma: Structure) -> int:
    return rank_components(sigma).rank


def rename_apart(sigma: MultiRootedStructure) -> MultiRootedStructure:
    """Variant of ``sigma`` whose nodes are all fresh."""
    return copy(sigma)


def concatenate(structures) -> MultiRootedStructure:
    """Join structures into one MRS; nodes already shared between them stay shared."""
    structures = list(structures)
    if not structures:
        raise ValueError("concatenate needs at least one structure; use MRS.empty")
    h = structures[0].hierarchy
    roots = []
    types: dict = {}
    arcs: dict = {}
    for s in structures:
        same_hierarchy(structures[0], s)
        roots.extend(s.roots)
        types.update(s._types)
        arcs.update(s._arcs)
    if len(set(roots)) != len(roots):
        raise ValueError("concatenated roots must be distinct")
    return MultiRootedStructure._make(h, tuple(roots), types, arcs)


def replicate(a: Structure, k: int) -> MultiRootedStructure:
    """``k`` node-disjoint copies of ``a`` as one MRS."""
    return concatenate([copy(a) for _ in range(k)]) if k else MultiRootedStructure.empty(a.hierarchy)


def atomic_sequence(hierarchy, types) -> MultiRootedStructure:
    """Disjoint arc-free roots of the given types."""
    nodes = [fresh_node() for _ in types]
    return MultiRootedStructure._make(hierarchy, tuple(nodes), dict(zip(nodes, types)), {})
