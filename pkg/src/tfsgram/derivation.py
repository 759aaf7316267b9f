"""Derivation relations over multi-rooted structures.

These are search procedures meant as oracles for small inputs, not as
parsers: :func:`immediate_derives` decides one rewriting step between two
given structures and :func:`derives_bounded` searches top-down for a
derivation of bounded length.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import UnificationFailure
from .fs import Structure, copy, disjoint_parts, morphism, same_hierarchy, unify_graph
from .grammar import Grammar, Rule, preterminals
from .hierarchy import TOP
from .mrs import MultiRootedStructure, as_mrs

__all__ = ["Answer", "Step", "immediate_derives", "derives_bounded", "rewrite", "in_language_bounded"]


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    rule: str
    position: int  # 1-based element of the rewritten structure


def _sub(sigma: Structure, indices) -> MultiRootedStructure:
    from .mrs import _restricted

    return _restricted(sigma, tuple(sigma.roots[i - 1] for i in indices))


def _conservative(h, a: Structure, b: Structure, extra_types, extra_arcs, pairs) -> bool:
    """True iff identifying ``pairs`` adds no information to ``a`` or to ``b``.

    The graph is the disjoint union of ``a``, ``b`` and an extra part (a
    rule copy).  Each congruence class may hold at most one node of ``a``
    and one of ``b``, whose types and feature sets must equal the class's.
    """
    types = {**a._types, **b._types, **extra_types}
    arcs = {**a._arcs, **b._arcs, **extra_arcs}
    parent: dict = {}

    def find(x):
        while x in parent:
            x = parent[x]
        return x

    stack = list(pairs)
    while stack:
        x, y = stack.pop()
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx
            ax, ay = arcs.get(x, {}), arcs.get(y, {})
            for f in ax.keys() & ay.keys():
                stack.append((ax[f], ay[f]))
    classes: dict = {}
    for q in types:
        classes.setdefault(find(q), []).append(q)
    a_nodes, b_nodes = a._types, b._types
    for members in classes.values():
        in_a = [q for q in members if q in a_nodes]
        in_b = [q for q in members if q in b_nodes]
        if len(in_a) > 1 or len(in_b) > 1 or not (in_a or in_b):
            if len(members) > 1 or not (in_a or in_b):
                return False
        t = types[members[0]]
        feats: set = set()
        for q in members:
            t = h.lub(t, types[q])
            feats |= arcs.get(q, {}).keys()
        if t == TOP:
            return False
        for q in in_a + in_b:
            if types[q] != t or arcs.get(q, {}).keys() != feats:
                return False
    return True


def immediate_derives(g: Grammar, a: Structure, b: Structure) -> Optional[Step]:
    """A rule and position licensing one rewriting step from ``a`` to ``b``, or None.

    Element ``i`` of ``a`` must be (exactly, not just compatibly) the head of
    an instance of the rule, the instance's body must be elements
    ``i..i+n-2`` of ``b``, and everything outside must be identical in
    ``a`` and ``b`` up to one common renaming.
    """
    a, b = as_mrs(a), as_mrs(b)
    same_hierarchy(a, b)
    if not a._types.keys().isdisjoint(b._types.keys()):
        b = copy(b)
    k, m = len(a), len(b)
    for rule in g.rules:
        n = len(rule)
        if m != k + n - 2:
            continue
        for i in range(1, k + 1):
            ctx_a = list(range(1, i)) + list(range(i + 1, k + 1))
            ctx_b = list(range(1, i)) + list(range(i + n - 1, m + 1))
            sa, sb = _sub(a, ctx_a), _sub(b, ctx_b)
            phi = morphism(sa, sb)
            if not phi or not morphism(sb, sa):
                continue
            r = copy(rule.mrs)
            pairs = list(phi.mapping.items())
            pairs.append((r.roots[0], a.roots[i - 1]))
            pairs.extend(zip(r.roots[1:], b.roots[i - 1 : i + n - 2]))
            if _conservative(g.hierarchy, a, b, r._types, r._arcs, pairs):
                return Step(rule.name, i)
    return None


def rewrite(s: Structure, i: int, rule: Rule, *, occurs_check=True) -> Optional[MultiRootedStructure]:
    """Replace element ``i`` (1-based) of ``s`` by the body of ``rule``, unifying heads.

    Returns None when the head does not unify or the result is ill-formed.
    """
    r = rule.mrs
    types, arcs, rroots = disjoint_parts(s, r)
    roots = s.roots[: i - 1] + rroots[1:] + s.roots[i:]
    try:
        out_roots, t, a = unify_graph(
            s.hierarchy, types, arcs, [(s.roots[i - 1], rroots[0])], roots, occurs_check=occurs_check
        )
    except UnificationFailure:
        return None
    return MultiRootedStructure._make(s.hierarchy, out_roots, t, a)


# Sentential forms for the bounded search are pairs (mrs, positions): the
# MRS has distinct roots and positions[p] names the root at position p.  A
# rule body element shared with its context puts one node at two
# positions, which an MRS cannot express but the chart handles naturally.


def _form(h, seq, types, arcs):
    distinct = list(dict.fromkeys(seq))
    index = {q: n for n, q in enumerate(distinct)}
    return MultiRootedStructure._make(h, tuple(distinct), types, arcs), tuple(index[q] for q in seq)


def _rewrite_form(s, pos, i, rule, occurs_check):
    types, arcs, rroots = disjoint_parts(s, rule.mrs)
    seq = [s.roots[p] for p in pos[: i - 1]] + list(rroots[1:]) + [s.roots[p] for p in pos[i:]]
    try:
        out, t, a = unify_graph(
            s.hierarchy, types, arcs, [(s.roots[pos[i - 1]], rroots[0])], seq,
            occurs_check=occurs_check, merge_roots=True,
        )
    except UnificationFailure:
        return None
    return _form(s.hierarchy, out, t, a)


def _unifiable(s, pos, b: Structure, occurs_check) -> bool:
    if len(pos) != len(b.roots):
        return False
    if not pos:
        return True
    types, arcs, broots = disjoint_parts(s, b)
    pairs = [(s.roots[p], q) for p, q in zip(pos, broots)]
    try:
        unify_graph(s.hierarchy, types, arcs, pairs, s.roots, occurs_check=occurs_check, merge_roots=True)
    except UnificationFailure:
        return False
    return True


def derives_bounded(g: Grammar, a: Structure, b: Structure, depth: int, *, occurs_check=True) -> Answer:
    """Whether some specialisation of ``a`` rewrites into a specialisation of ``b``.

    Explores every rewriting sequence of at most ``depth`` steps,
    unifying rule heads into the current structure and finally the result
    with ``b``.  Intermediate forms may hold one node at several positions.
    NO means the search space was exhausted, so no derivation of any
    length exists; UNKNOWN means live candidates remained at the bound.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    a, b = as_mrs(a), as_mrs(b)
    same_hierarchy(a, b)
    target = len(b)
    monotone = not g.has_empty_rules
    frontier = [(a, tuple(range(len(a))))]
    seen = {(a.canonical(), frontier[0][1])}
    for step in range(depth + 1):
        for s, pos in frontier:
            if _unifiable(s, pos, b, occurs_check):
                return Answer.YES
        nxt = []
        for s, pos in frontier:
            for i in range(1, len(pos) + 1):
                for rule in g.rules:
                    out = _rewrite_form(s, pos, i, rule, occurs_check)
                    if out is None or (monotone and len(out[1]) > target):
                        continue
                    key = (out[0].canonical(), out[1])
                    if key not in seen:
                        seen.add(key)
                        nxt.append(out)
        if not nxt:
            return Answer.NO
        frontier = nxt
    return Answer.UNKNOWN


def in_language_bounded(g: Grammar, words, depth: int, *, occurs_check=True) -> Answer:
    """Bounded membership test: does the start symbol derive the pre-terminals of ``words``?"""
    if isinstance(words, str):
        words = words.split()
    words = list(words)
    pt = preterminals(g, words, 1, len(words))
    return derives_bounded(g, MultiRootedStructure.of(copy(g.start)), pt, depth, occurs_check=occurs_check)
