"""Reference implementations used to cross-check the library.

Everything here works on path tables rather than graphs: a structure is
described by its set of paths, the type at each path and which paths
share a node.  None of it calls the library's morphism or unification
code, so agreement between the two is meaningful.
"""

from __future__ import annotations

import itertools

from tfsgram.hierarchy import TOP, BOT
from tfsgram.fs import FeatureStructure, fresh_node


def path_table(a, root=None, limit=64):
    """``{path: node}`` for every path from ``root``; acyclic inputs only."""
    root = a.roots[0] if root is None else root
    table = {(): root}
    stack = [()]
    while stack:
        p = stack.pop()
        if len(p) > limit:
            raise ValueError("cyclic")
        for f, t in a.arcs_of(table[p]).items():
            table[p + (f,)] = t
            stack.append(p + (f,))
    return table


def naive_subsumes(a, b) -> bool:
    """Path-table characterisation of subsumption for acyclic single-rooted structures."""
    ta, tb = path_table(a), path_table(b)
    h = a.hierarchy
    for p, q in ta.items():
        if p not in tb:
            return False
        if not h.subtype(a.type_of(q), b.type_of(tb[p])):
            return False
    by_node: dict = {}
    for p, q in ta.items():
        by_node.setdefault(q, []).append(p)
    for ps in by_node.values():
        if len({tb[p] for p in ps}) > 1:
            return False
    return True


def naive_rank(a):
    t = path_table(a)
    h = a.hierarchy
    n_paths = len(t)
    theta = sum(h.level(a.type_of(q)) for q in t.values())
    return n_paths + theta + (n_paths - len(set(t.values())))


def naive_unify(a, b):
    """Unify two acyclic structures by closing their path tables.

    Returns a FeatureStructure, or None when the types clash or the result
    would need an infinite (cyclic) path set.
    """
    h = a.hierarchy
    ta, tb = path_table(a), path_table(b)
    bound = len(a.nodes) + len(b.nodes) + 1
    paths = set(ta) | set(tb)
    parent: dict = {}

    def find(p):
        root = p
        while root in parent:
            root = parent[root]
        while p != root:
            parent[p], p = root, parent[p]
        return root

    def union(p, q):
        rp, rq = find(p), find(q)
        if rp != rq:
            parent[rq] = rp
            return True
        return False

    for t in (ta, tb):
        first: dict = {}
        for p, q in t.items():
            if q in first:
                union(first[q], p)
            else:
                first[q] = p

    def loops():
        # a path in the same class as one of its own prefixes means a cycle
        return any(find(p[:i]) == find(p) for p in paths for i in range(len(p)))

    changed = True
    while changed:
        changed = False
        if loops():
            return None
        children: dict = {}
        for p in paths:
            if p:
                children.setdefault(p[:-1], {})[p[-1]] = p
        classes: dict = {}
        for p in paths:
            classes.setdefault(find(p), []).append(p)
        for members in classes.values():
            feats: dict = {}
            for p in members:
                for f, c in children.get(p, {}).items():
                    feats.setdefault(f, []).append(c)
            for f, cs in feats.items():
                for c in cs[1:]:
                    changed |= union(cs[0], c)
                for p in members:
                    ext = p + (f,)
                    if ext not in paths:
                        if len(ext) > bound:
                            return None
                        paths.add(ext)
                        changed = True
                        union(cs[0], ext)

    classes = {}
    for p in paths:
        classes.setdefault(find(p), []).append(p)
    node_of = {rep: fresh_node() for rep in classes}
    types = {}
    arcs: dict = {}
    for rep, members in classes.items():
        t = BOT
        for p in members:
            for src, tab in ((a, ta), (b, tb)):
                if p in tab:
                    t = h.lub(t, src.type_of(tab[p]))
        if t == TOP:
            return None
        types[node_of[rep]] = t
    for p in paths:
        if p:
            arcs.setdefault(node_of[find(p[:-1])], {})[p[-1]] = node_of[find(p)]
    return FeatureStructure(h, node_of[find(())], types, arcs)


def all_sentences(words, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(words, repeat=n)
