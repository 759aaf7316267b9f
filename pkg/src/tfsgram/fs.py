"""Typed feature structures and their calculus.

A structure is a finite directed graph whose arcs are labelled by features
and whose nodes are labelled by types of a :class:`~tfsgram.hierarchy.TypeHierarchy`.
:class:`FeatureStructure` has a single root; the multi-rooted variant in
:mod:`tfsgram.mrs` shares the graph machinery defined here.

Structures are immutable.  Node identifiers are opaque integers drawn from a
process-wide counter, so two structures built independently never share
nodes; two structures are "the same" when they are alphabetic variants
(:func:`variant`), never by node identity.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional, Union

from .errors import (
    CycleIntroduced,
    CyclicStructure,
    HierarchyMismatch,
    Inconsistent,
    NotStrict,
    TFSError,
    UnificationFailure,
    UnknownType,
)
from .hierarchy import BOT, TOP, TypeHierarchy, validate

Path = tuple  # a tuple of feature names; () is the empty path

# itertools.count.__next__ is atomic under the GIL, so allocation is thread safe.
fresh_node = itertools.count(1).__next__

_EMPTY_ARCS: Mapping[str, int] = MappingProxyType({})


class Structure:
    """Graph shared by single- and multi-rooted feature structures.

    ``types`` maps every node to its type and ``arcs`` maps a node to its
    outgoing ``{feature: target}`` dictionary (nodes without arcs may be
    omitted).  Every node must be reachable from some root.
    """

    __slots__ = ("hierarchy", "roots", "_types", "_arcs", "_canon")

    def __init__(self, hierarchy: TypeHierarchy, roots, types, arcs):
        self.hierarchy = hierarchy
        self.roots = tuple(roots)
        self._types = dict(types)
        self._arcs = {q: dict(fs) for q, fs in arcs.items() if fs}
        self._canon = None
        self._validate()

    def _validate(self):
        types, arcs, h = self._types, self._arcs, self.hierarchy
        if len(set(self.roots)) != len(self.roots):
            raise TFSError("roots must be pairwise distinct")
        for q, t in types.items():
            if t == TOP:
                raise TFSError("node %r is typed with the inconsistent type" % (q,))
            if t not in h:
                raise UnknownType(t)
        for q, fs in arcs.items():
            if q not in types:
                raise TFSError("arc source %r is not a node" % (q,))
            for f, tgt in fs.items():
                if tgt not in types:
                    raise TFSError("arc %r --%s--> %r leaves the node set" % (q, f, tgt))
        for r in self.roots:
            if r not in types:
                raise TFSError("root %r is not a node" % (r,))
        if reachable(arcs, self.roots) != set(types):
            raise TFSError("every node must be reachable from a root")

    @classmethod
    def _make(cls, hierarchy, roots, types, arcs):
        """Wrap already-valid parts without copying or checking them."""
        self = object.__new__(cls)
        self.hierarchy = hierarchy
        self.roots = tuple(roots)
        self._types = types
        self._arcs = arcs
        self._canon = None
        return self

    @property
    def nodes(self) -> frozenset:
        return frozenset(self._types)

    def type_of(self, q) -> str:
        return self._types[q]

    def arcs_of(self, q) -> Mapping[str, int]:
        return self._arcs.get(q, _EMPTY_ARCS)

    def arc_items(self):
        for q, fs in self._arcs.items():
            for f, tgt in fs.items():
                yield q, f, tgt

    def canonical(self) -> str:
        """Canonical textual form; equal strings iff alphabetic variants."""
        if self._canon is None:
            from .avm import serialize

            self._canon = serialize(self)
        return self._canon

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return "%s(%s)" % (type(self).__name__, self.canonical())


class FeatureStructure(Structure):
    """A rooted, connected typed feature structure."""

    __slots__ = ()

    def __init__(self, hierarchy, root, types, arcs=None):
        super().__init__(hierarchy, (root,), types, arcs or {})

    @property
    def root(self):
        return self.roots[0]

    @classmethod
    def atomic(cls, hierarchy, t=BOT):
        """A single node of type ``t`` with no arcs."""
        q = fresh_node()
        return cls(hierarchy, q, {q: t})


def reachable(arcs, roots) -> set:
    seen = set(roots)
    stack = list(roots)
    while stack:
        q = stack.pop()
        for tgt in arcs.get(q, _EMPTY_ARCS).values():
            if tgt not in seen:
                seen.add(tgt)
                stack.append(tgt)
    return seen


def same_hierarchy(a: Structure, b: Structure):
    if a.hierarchy is not b.hierarchy and a.hierarchy != b.hierarchy:
        raise HierarchyMismatch("structures are typed over different hierarchies")


# ---------------------------------------------------------------------------
# paths and cycles


def resolve(a: Structure, q, path) -> Optional[int]:
    """The node reached from ``q`` along ``path``, or None if some arc is missing."""
    for f in path:
        q = a._arcs.get(q, _EMPTY_ARCS).get(f)
        if q is None:
            return None
    return q


def _find_cycle(arcs, roots):
    """Path (from some root) to a node lying on a cycle, or None if acyclic."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict = {}
    for r in roots:
        if colour.get(r, WHITE) != WHITE:
            continue
        colour[r] = GREY
        stack = [(r, iter(sorted(arcs.get(r, _EMPTY_ARCS).items())))]
        trail: list[str] = []
        while stack:
            q, it = stack[-1]
            for f, tgt in it:
                c = colour.get(tgt, WHITE)
                if c == GREY:
                    return tuple(trail) + (f,)
                if c == WHITE:
                    colour[tgt] = GREY
                    trail.append(f)
                    stack.append((tgt, iter(sorted(arcs.get(tgt, _EMPTY_ARCS).items()))))
                    break
            else:
                colour[q] = BLACK
                stack.pop()
                if trail and stack:
                    trail.pop()
    return None


def is_cyclic(a: Structure) -> bool:
    return _find_cycle(a._arcs, a.roots) is not None


def _require_acyclic(a: Structure):
    if _find_cycle(a._arcs, a.roots) is not None:
        raise CyclicStructure("structure is cyclic; its path set is infinite")


def _paths_from(a: Structure, root):
    out = []
    stack = [(root, ())]
    while stack:
        q, p = stack.pop()
        out.append(p)
        for f, tgt in a.arcs_of(q).items():
            stack.append((tgt, p + (f,)))
    return out


def paths(a: FeatureStructure) -> frozenset:
    """The set of paths defined from the root; raises CyclicStructure if infinite."""
    _require_acyclic(a)
    return frozenset(_paths_from(a, a.root))


def path_counts(a: Structure) -> dict:
    """Number of (root, path) pairs reaching each node.  Requires acyclicity."""
    indeg = dict.fromkeys(a._types, 0)
    for _, _, tgt in a.arc_items():
        indeg[tgt] += 1
    counts = dict.fromkeys(a._types, 0)
    for r in a.roots:
        counts[r] += 1
    ready = [q for q, d in indeg.items() if d == 0]
    done = 0
    while ready:
        q = ready.pop()
        done += 1
        c = counts[q]
        for tgt in a.arcs_of(q).values():
            counts[tgt] += c
            indeg[tgt] -= 1
            if indeg[tgt] == 0:
                ready.append(tgt)
    if done != len(indeg):
        raise CyclicStructure("structure is cyclic; rank is undefined")
    return counts


class RankComponents(NamedTuple):
    paths: int
    theta: int
    delta: int

    @property
    def rank(self) -> int:
        return self.paths + self.theta + self.delta


def rank_components(a: Structure) -> RankComponents:
    """Path count, summed type levels over paths, and paths minus nodes."""
    counts = path_counts(a)
    level = a.hierarchy.level
    n_paths = sum(counts.values())
    theta = sum(c * level(a._types[q]) for q, c in counts.items())
    return RankComponents(n_paths, theta, n_paths - len(a._types))


def rank(a: Structure) -> int:
    return rank_components(a).rank


# ---------------------------------------------------------------------------
# subsumption


@dataclass(frozen=True)
class SubsumptionMorphism:
    """Total node map from the subsumer onto the subsumee.  Always truthy."""

    mapping: Mapping

    def __bool__(self):
        return True

    def __getitem__(self, q):
        return self.mapping[q]

    def __len__(self):
        return len(self.mapping)


@dataclass(frozen=True)
class NoMorphism:
    """Why subsumption failed.  Always falsy.

    ``reason`` is one of ``"missing-arc"``, ``"type-clash"``,
    ``"inconsistent-image"`` or ``"length-mismatch"``; ``root`` is the
    0-based root index the failing ``path`` starts from.
    """

    reason: str
    path: tuple = ()
    root: int = 0
    detail: str = ""

    def __bool__(self):
        return False

    def __str__(self):
        return "%s at <%s>%s" % (self.reason, " ".join(self.path), ": " + self.detail if self.detail else "")


def morphism(a: Structure, b: Structure) -> Union[SubsumptionMorphism, NoMorphism]:
    """Root-wise subsumption morphism from ``a`` to ``b`` (both of equal length).

    The morphism is forced by the roots, so a single breadth-first
    propagation either builds it or finds the first violated condition.
    """
    if len(a.roots) != len(b.roots):
        return NoMorphism("length-mismatch", detail="%d vs %d roots" % (len(a.roots), len(b.roots)))
    subtype = a.hierarchy.subtype
    h: dict = {}
    where: dict = {}
    queue = deque()
    for i, (qa, qb) in enumerate(zip(a.roots, b.roots)):
        if qa in h:
            if h[qa] != qb:
                return NoMorphism("inconsistent-image", (), i, "root %d is reached from another root" % (i + 1))
            continue
        h[qa] = qb
        where[qa] = (i, ())
        queue.append(qa)
    a_types, b_types, a_arcs, b_arcs = a._types, b._types, a._arcs, b._arcs
    while queue:
        q = queue.popleft()
        qb = h[q]
        if not subtype(a_types[q], b_types[qb]):
            i, p = where[q]
            return NoMorphism("type-clash", p, i, "%s is not more general than %s" % (a_types[q], b_types[qb]))
        fs_b = b_arcs.get(qb, _EMPTY_ARCS)
        for f, tgt in a_arcs.get(q, _EMPTY_ARCS).items():
            tgt_b = fs_b.get(f)
            if tgt_b is None:
                i, p = where[q]
                return NoMorphism("missing-arc", p + (f,), i)
            seen = h.get(tgt)
            if seen is None:
                h[tgt] = tgt_b
                i, p = where[q]
                where[tgt] = (i, p + (f,))
                queue.append(tgt)
            elif seen != tgt_b:
                i, p = where[q]
                return NoMorphism("inconsistent-image", p + (f,), i, "paths are shared in the subsumer only")
    return SubsumptionMorphism(MappingProxyType(h))


def subsumes(a: FeatureStructure, b: FeatureStructure) -> Union[SubsumptionMorphism, NoMorphism]:
    """The subsumption morphism from ``a`` to ``b`` if ``a`` is at least as general."""
    same_hierarchy(a, b)
    return morphism(a, b)


def variant(a: Structure, b: Structure) -> bool:
    same_hierarchy(a, b)
    return bool(morphism(a, b)) and bool(morphism(b, a))


def strictly_subsumes(a: Structure, b: Structure) -> bool:
    same_hierarchy(a, b)
    return bool(morphism(a, b)) and not morphism(b, a)


# ---------------------------------------------------------------------------
# strictness witnesses


@dataclass(frozen=True)
class NewPath:
    path: tuple

    def holds(self, a, b):
        return resolve(a, a.root, self.path) is None and resolve(b, b.root, self.path) is not None


@dataclass(frozen=True)
class TypePromotion:
    path: tuple
    node: int
    old: str
    new: str

    def holds(self, a, b):
        qa, qb = resolve(a, a.root, self.path), resolve(b, b.root, self.path)
        return (
            qa == self.node
            and qa is not None
            and qb is not None
            and a.type_of(qa) == self.old
            and b.type_of(qb) == self.new
            and a.hierarchy.strict_subtype(self.old, self.new)
        )


@dataclass(frozen=True)
class NewReentrancy:
    path1: tuple
    path2: tuple

    def holds(self, a, b):
        a1, a2 = resolve(a, a.root, self.path1), resolve(a, a.root, self.path2)
        b1, b2 = resolve(b, b.root, self.path1), resolve(b, b.root, self.path2)
        return None not in (a1, a2, b1) and a1 != a2 and b1 == b2


StrictnessWitness = Union[NewPath, TypePromotion, NewReentrancy]


def _bfs_paths(a: Structure):
    """Shortest path to every node, visiting features in sorted order."""
    where = {}
    order = []
    queue = deque()
    for r in a.roots:
        if r not in where:
            where[r] = ()
            queue.append(r)
    while queue:
        q = queue.popleft()
        order.append(q)
        for f, tgt in sorted(a.arcs_of(q).items()):
            if tgt not in where:
                where[tgt] = where[q] + (f,)
                queue.append(tgt)
    return order, where


def strictness_witness(a: FeatureStructure, b: FeatureStructure) -> StrictnessWitness:
    """Explain why ``a`` strictly subsumes ``b``.

    Tries, in order: a path of ``b`` missing from ``a``, a node whose type is
    strictly promoted, and a pair of paths shared in ``b`` only.
    """
    same_hierarchy(a, b)
    h = morphism(a, b)
    if not h:
        raise NotStrict("first structure does not subsume the second (%s)" % h)
    if morphism(b, a):
        raise NotStrict("structures are alphabetic variants")
    order, where = _bfs_paths(a)
    for q in order:
        fs_a = a.arcs_of(q)
        for f in sorted(b.arcs_of(h[q])):
            if f not in fs_a:
                return NewPath(where[q] + (f,))
    for q in order:
        ta, tb = a.type_of(q), b.type_of(h[q])
        if ta != tb:
            return TypePromotion(where[q], q, ta, tb)
    images = {}
    for q in order:
        prev = images.setdefault(h[q], q)
        if prev != q:
            return NewReentrancy(where[prev], where[q])
    raise AssertionError("strict subsumption without a witness")  # pragma: no cover


# ---------------------------------------------------------------------------
# unification


class RootsIdentified(UnificationFailure):
    def __init__(self):
        super().__init__("unification identifies two roots")


def _path_to(arcs, roots, target):
    where = {r: () for r in roots}
    queue = deque(roots)
    while queue:
        q = queue.popleft()
        if q == target:
            return where[q]
        for f, tgt in sorted(arcs.get(q, _EMPTY_ARCS).items()):
            if tgt not in where:
                where[tgt] = where[q] + (f,)
                queue.append(tgt)
    return ()


def unify_graph(hierarchy, types, arcs, pairs, out_roots, *, occurs_check=True, report_roots=None, merge_roots=False):
    """Identify node ``pairs`` in one graph and close under arc congruence.

    Returns ``(roots, types, arcs)`` of the quotient restricted to what is
    reachable from ``out_roots``, with freshly allocated nodes.  Raises
    :class:`Inconsistent`, :class:`CycleIntroduced` (when ``occurs_check``)
    or :class:`RootsIdentified`; with ``merge_roots`` two out roots may
    collapse and the returned list then repeats a node.
    """
    parent: dict = {}
    ctype: dict = {}
    owned: dict = {}

    def find(x):
        root = x
        while root in parent:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    lub = hierarchy.lub
    stack = list(pairs)
    while stack:
        a, b = stack.pop()
        ra, rb = find(a), find(b)
        if ra == rb:
            continue
        ta = ctype.get(ra) or types[ra]
        tb = ctype.get(rb) or types[rb]
        t = lub(ta, tb)
        if t == TOP:
            where = report_roots if report_roots is not None else out_roots
            raise Inconsistent(_path_to(arcs, where, a), (ta, tb))
        da = owned.get(ra)
        db = owned.get(rb)
        if da is None:
            da = arcs.get(ra, _EMPTY_ARCS)
        if db is None:
            db = arcs.get(rb, _EMPTY_ARCS)
        if len(db) > len(da):
            ra, rb, da, db = rb, ra, db, da
        if ra not in owned:
            da = dict(da)
        owned.pop(rb, None)
        parent[rb] = ra
        ctype[ra] = t
        for f, tgt in db.items():
            cur = da.get(f)
            if cur is None:
                da[f] = tgt
            elif cur != tgt:
                stack.append((cur, tgt))
        owned[ra] = da

    new: dict = {}
    order = []
    roots = []
    for r in out_roots:
        rep = find(r)
        if rep in new:
            if not merge_roots:
                raise RootsIdentified()
            roots.append(new[rep])
            continue
        nid = fresh_node()
        new[rep] = nid
        order.append(rep)
        roots.append(nid)
    out_types: dict = {}
    out_arcs: dict = {}
    i = 0
    while i < len(order):
        rep = order[i]
        i += 1
        nid = new[rep]
        out_types[nid] = ctype.get(rep) or types[rep]
        src = owned.get(rep)
        if src is None:
            src = arcs.get(rep, _EMPTY_ARCS)
        if src:
            mapped = {}
            for f, tgt in src.items():
                trep = find(tgt)
                tid = new.get(trep)
                if tid is None:
                    tid = new[trep] = fresh_node()
                    order.append(trep)
                mapped[f] = tid
            out_arcs[nid] = mapped
    if occurs_check:
        cyc = _find_cycle(out_arcs, roots)
        if cyc is not None:
            raise CycleIntroduced(cyc)
    return roots, out_types, out_arcs


def disjoint_parts(a: Structure, b: Structure):
    """Types and arcs of ``a`` and ``b`` in one graph, plus ``b``'s (possibly renamed) roots."""
    if a._types.keys().isdisjoint(b._types.keys()):
        types = {**a._types, **b._types}
        arcs = {**a._arcs, **b._arcs}
        return types, arcs, b.roots
    ren = {q: fresh_node() for q in b._types}
    types = dict(a._types)
    arcs = dict(a._arcs)
    for q, t in b._types.items():
        types[ren[q]] = t
    for q, fs in b._arcs.items():
        arcs[ren[q]] = {f: ren[t] for f, t in fs.items()}
    return types, arcs, tuple(ren[r] for r in b.roots)


def unify(a: FeatureStructure, b: FeatureStructure, *, occurs_check: bool = True) -> FeatureStructure:
    """Most general structure subsumed by both ``a`` and ``b``.

    Raises :class:`~tfsgram.errors.Inconsistent` when some merged node would
    get the inconsistent type, and :class:`~tfsgram.errors.CycleIntroduced`
    when ``occurs_check`` is on and the result would be cyclic.
    """
    same_hierarchy(a, b)
    types, arcs, broots = disjoint_parts(a, b)
    roots, t, r = unify_graph(
        a.hierarchy, types, arcs, [(a.root, broots[0])], [a.root], occurs_check=occurs_check
    )
    return FeatureStructure._make(a.hierarchy, roots, t, r)


def copy(a: Structure) -> Structure:
    """Alphabetic variant of ``a`` over fresh nodes."""
    ren = {q: fresh_node() for q in a._types}
    types = {ren[q]: t for q, t in a._types.items()}
    arcs = {ren[q]: {f: ren[t] for f, t in fs.items()} for q, fs in a._arcs.items()}
    return type(a)._make(a.hierarchy, [ren[r] for r in a.roots], types, arcs)


# ---------------------------------------------------------------------------
# infinite chains


@lru_cache(maxsize=None)
def chain_hierarchy(t: str = "t") -> TypeHierarchy:
    """``bot`` with a single proper subtype ``t``."""
    return validate({t: [BOT]})


def cyclic_chain(i: int, hierarchy: Optional[TypeHierarchy] = None, feature: str = "f") -> FeatureStructure:
    """``i + 1`` bot nodes in an f-chain whose last node loops to itself.

    Each element strictly subsumes its predecessor, giving an infinite
    strictly decreasing sequence.
    """
    if i < 0:
        raise ValueError("chain index must be non-negative")
    h = hierarchy if hierarchy is not None else chain_hierarchy()
    nodes = [fresh_node() for _ in range(i + 1)]
    types = dict.fromkeys(nodes, BOT)
    arcs = {q: {feature: nxt} for q, nxt in zip(nodes, nodes[1:])}
    arcs[nodes[-1]] = {feature: nodes[-1]}
    return FeatureStructure._make(h, (nodes[0],), types, arcs)


def spec_chain(i: int, t: str = "t", hierarchy: Optional[TypeHierarchy] = None, feature: str = "f") -> FeatureStructure:
    """Acyclic f-chain of ``i + 1`` nodes: ``i`` typed ``t``, the last ``bot``.

    Each element strictly subsumes its successor, giving an infinite strictly
    increasing sequence.
    """
    if i < 0:
        raise ValueError("chain index must be non-negative")
    h = hierarchy if hierarchy is not None else chain_hierarchy(t)
    if not h.strict_subtype(BOT, t):
        raise ValueError("%r must be strictly more specific than bot" % t)
    nodes = [fresh_node() for _ in range(i + 1)]
    types = {q: t for q in nodes[:-1]}
    types[nodes[-1]] = BOT
    arcs = {q: {feature: nxt} for q, nxt in zip(nodes, nodes[1:])}
    return FeatureStructure._make(h, (nodes[0],), types, arcs)
