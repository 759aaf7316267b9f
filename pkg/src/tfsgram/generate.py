"""Random hierarchies, structures, edits and grammars for property testing.

All generators take a :class:`random.Random` so runs are reproducible.
The edit functions implement the three kinds of strict specialisation
(add a path, promote a type, identify two nodes) and their inverses; each
returns ``None`` when the chosen structure admits no edit of that kind.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .errors import NotBoundedComplete, UnificationFailure
from .fs import FeatureStructure, Structure, fresh_node, reachable, unify_graph
from .grammar import Grammar, Rule
from .hierarchy import BOT, TypeHierarchy, validate
from .mrs import MultiRootedStructure

__all__ = [
    "random_hierarchy",
    "random_graph",
    "random_fs",
    "random_mrs",
    "specialize",
    "generalize",
    "random_grammar",
    "SPECIALIZATIONS",
    "GENERALIZATIONS",
]

FEATURES = ("f", "g", "h")


def random_hierarchy(rng: random.Random, n_types: int = 4, max_parents: int = 2, attempts: int = 100) -> TypeHierarchy:
    """A bounded-complete hierarchy with ``n_types`` proper types ``t0, t1, ...``.

    Each type picks its parents among earlier types; draws that violate
    bounded completeness are rejected and redrawn.
    """
    for _ in range(attempts):
        decls = {}
        for i in range(n_types):
            earlier = ["t%d" % j for j in range(i)]
            k = rng.randint(0, min(max_parents, len(earlier)))
            decls["t%d" % i] = rng.sample(earlier, k) or [BOT]
        try:
            return validate(decls)
        except NotBoundedComplete:
            continue
    # a chain is always bounded complete
    return validate({"t%d" % i: ["t%d" % (i - 1)] if i else [BOT] for i in range(n_types)})


def random_graph(
    rng: random.Random,
    h: TypeHierarchy,
    n_roots: int = 1,
    max_nodes: int = 6,
    features: Sequence[str] = FEATURES,
    share: float = 0.3,
    cyclic: bool = False,
):
    """Roots, types and arcs of a random connected graph.

    Node ``i`` receives an arc from some earlier node so everything is
    reachable; extra arcs create sharing, pointing backwards (possibly at an
    ancestor) only when ``cyclic``.
    """
    types_pool = sorted(h.types)
    n = rng.randint(n_roots, max(n_roots, max_nodes))
    nodes = [fresh_node() for _ in range(n)]
    types = {q: rng.choice(types_pool) for q in nodes}
    arcs: dict = {}

    def free(q):
        return [f for f in features if f not in arcs.get(q, {})]

    for idx in range(n_roots, n):
        # each new node adds more free slots than it uses, so srcs is never empty
        srcs = [p for p in nodes[:idx] if free(p)]
        src = rng.choice(srcs)
        arcs.setdefault(src, {})[rng.choice(free(src))] = nodes[idx]
    for idx, q in enumerate(nodes):
        for f in features:
            if f in arcs.get(q, {}) or rng.random() >= share / len(features):
                continue
            targets = nodes if cyclic else nodes[idx + 1 :]
            if targets:
                arcs.setdefault(q, {})[f] = rng.choice(targets)
    return tuple(nodes[:n_roots]), types, arcs


def random_fs(rng: random.Random, h: TypeHierarchy, **kw) -> FeatureStructure:
    roots, types, arcs = random_graph(rng, h, 1, **kw)
    return FeatureStructure._make(h, roots, types, arcs)


def random_mrs(rng: random.Random, h: TypeHierarchy, n_roots: int, **kw) -> MultiRootedStructure:
    """Random MRS; later elements may share nodes with earlier ones."""
    if n_roots == 0:
        return MultiRootedStructure.empty(h)
    kw.setdefault("max_nodes", n_roots + 3)
    roots, types, arcs = random_graph(rng, h, n_roots, **kw)
    return MultiRootedStructure._make(h, roots, types, arcs)


# ---------------------------------------------------------------------------
# edits


def _rebuild(s: Structure, types, arcs) -> Structure:
    keep = reachable(arcs, s.roots)
    types = {q: t for q, t in types.items() if q in keep}
    arcs = {q: fs for q, fs in arcs.items() if q in keep and fs}
    return type(s)._make(s.hierarchy, s.roots, types, arcs)


def _ancestors(s: Structure, q) -> set:
    back: dict = {}
    for p, _, t in s.arc_items():
        back.setdefault(t, set()).add(p)
    seen = {q}
    stack = [q]
    while stack:
        for p in back.get(stack.pop(), ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def add_path(rng, s: Structure, features=FEATURES):
    """Add one arc, to a new node or (acyclically) to an existing one."""
    cands = [(q, f) for q in sorted(s._types) for f in features if f not in s.arcs_of(q)]
    if not cands:
        return None
    q, f = rng.choice(cands)
    types = dict(s._types)
    arcs = {p: dict(fs) for p, fs in s._arcs.items()}
    existing = sorted(set(s._types) - _ancestors(s, q))
    if existing and rng.random() < 0.4:
        tgt = rng.choice(existing)
    else:
        tgt = fresh_node()
        types[tgt] = rng.choice(sorted(s.hierarchy.types))
    arcs.setdefault(q, {})[f] = tgt
    return _rebuild(s, types, arcs)


def promote_type(rng, s: Structure, features=FEATURES):
    h = s.hierarchy
    cands = [q for q in sorted(s._types) if any(h.strict_subtype(s._types[q], u) for u in h.types)]
    if not cands:
        return None
    q = rng.choice(cands)
    ups = sorted(u for u in h.types if h.strict_subtype(s._types[q], u))
    types = dict(s._types)
    types[q] = rng.choice(ups)
    return _rebuild(s, types, s._arcs)


def merge_nodes(rng, s: Structure, features=FEATURES, tries: int = 8):
    """Identify two distinct nodes; None if no tried pair unifies acyclically."""
    nodes = sorted(s._types)
    if len(nodes) < 2:
        return None
    for _ in range(tries):
        a, b = rng.sample(nodes, 2)
        if a in s.roots and b in s.roots:
            continue
        try:
            roots, types, arcs = unify_graph(s.hierarchy, s._types, s._arcs, [(a, b)], s.roots)
        except UnificationFailure:
            continue
        return type(s)._make(s.hierarchy, roots, types, arcs)
    return None


def remove_arc(rng, s: Structure, features=FEATURES):
    cands = sorted((q, f) for q, f, _ in s.arc_items())
    if not cands:
        return None
    q, f = rng.choice(cands)
    arcs = {p: dict(fs) for p, fs in s._arcs.items()}
    del arcs[q][f]
    return _rebuild(s, s._types, arcs)


def demote_type(rng, s: Structure, features=FEATURES):
    cands = [q for q in sorted(s._types) if s._types[q] != BOT]
    if not cands:
        return None
    q = rng.choice(cands)
    types = dict(s._types)
    types[q] = rng.choice(sorted(s.hierarchy.parents(s._types[q])))
    return _rebuild(s, types, s._arcs)


def unshare(rng, s: Structure, features=FEATURES):
    """Redirect one incoming arc of a shared node to a copy of its subgraph."""
    incoming: dict = {}
    for q, f, t in s.arc_items():
        incoming.setdefault(t, []).append((q, f))
    cands = sorted(t for t, srcs in incoming.items() if len(srcs) + (t in s.roots) > 1)
    if not cands:
        return None
    t = rng.choice(cands)
    q, f = rng.choice(sorted(incoming[t]))
    sub = reachable(s._arcs, [t])
    ren = {p: fresh_node() for p in sub}
    types = dict(s._types)
    arcs = {p: dict(fs) for p, fs in s._arcs.items()}
    for p in sub:
        types[ren[p]] = s._types[p]
        if p in s._arcs:
            arcs[ren[p]] = {g: ren[x] if x in sub else x for g, x in s._arcs[p].items()}
    arcs[q][f] = ren[t]
    return _rebuild(s, types, arcs)


SPECIALIZATIONS = (add_path, promote_type, merge_nodes)
GENERALIZATIONS = (remove_arc, demote_type, unshare)


def _edit(rng, s, edits, features):
    order = list(edits)
    rng.shuffle(order)
    for e in order:
        out = e(rng, s, features)
        if out is not None:
            return out
    return None


def specialize(rng: random.Random, s: Structure, features=FEATURES) -> Optional[Structure]:
    """A strictly more specific structure, by one random edit (None if none applies)."""
    return _edit(rng, s, SPECIALIZATIONS, features)


def generalize(rng: random.Random, s: Structure, features=FEATURES) -> Optional[Structure]:
    """A strictly more general structure, by one random edit (None at the bottom)."""
    return _edit(rng, s, GENERALIZATIONS, features)


# ---------------------------------------------------------------------------
# grammars


def random_grammar(
    rng: random.Random,
    n_types: int = 3,
    n_words: int = 2,
    n_rules: int = 2,
    max_body: int = 2,
    cyclic: bool = False,
) -> Grammar:
    h = random_hierarchy(rng, n_types)
    small = dict(max_nodes=3, cyclic=cyclic)
    lexicon = {"w%d" % i: random_fs(rng, h, **small) for i in range(1, n_words + 1)}
    rules = [
        Rule("r%d" % i, random_mrs(rng, h, 1 + rng.randint(0, max_body), max_nodes=4, cyclic=cyclic))
        for i in range(1, n_rules + 1)
    ]
    return Grammar(h, tuple(rules), random_fs(rng, h, **small), lexicon)
