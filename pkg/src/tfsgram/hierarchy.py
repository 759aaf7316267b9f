"""Finite type hierarchies: subtyping, least upper bounds and levels.

A hierarchy is declared as a mapping from each type name to its immediate
*more general* types (its parents).  ``bot`` is always present and is the
parent of every type declared without parents.  The inconsistent type
``TOP`` is implicit: it is what :meth:`TypeHierarchy.lub` returns for types
with no common upper bound, and it can never be declared.

Orientation follows the information ordering: ``subtype(h, a, b)`` is true
when ``a`` is more general than (or equal to) ``b``.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import combinations

from .errors import CycleInHierarchy, HierarchyError, NotBoundedComplete, UnknownType

BOT = "bot"
TOP = "⊤"

__all__ = ["BOT", "TOP", "TypeHierarchy", "validate", "lub", "subtype", "level"]


class TypeHierarchy:
    """A validated, immutable bounded-complete partial order over type names.

    Build one with :func:`validate`; the constructor is not public API.
    """

    __slots__ = ("types", "_parents", "_up", "_levels", "_lub", "_hash")

    def __init__(self, parents, up, levels, lub_table):
        self.types = frozenset(parents)
        self._parents = parents
        self._up = up
        self._levels = levels
        self._lub = lub_table
        self._hash = None

    # -- queries ---------------------------------------------------------

    def __contains__(self, t):
        return t in self._up

    def __len__(self):
        return len(self.types)

    def __iter__(self):
        return iter(self.sorted_types())

    def check(self, t):
        if t not in self._up:
            raise UnknownType(t)
        return t

    def subtype(self, t1, t2):
        """True iff ``t1`` is more general than or equal to ``t2``."""
        if t2 == TOP:
            return t1 == TOP or t1 in self._up
        if t1 == TOP:
            self.check(t2)
            return False
        self.check(t2)
        try:
            return t2 in self._up[t1]
        except KeyError:
            raise UnknownType(t1) from None

    def strict_subtype(self, t1, t2):
        return t1 != t2 and self.subtype(t1, t2)

    def lub(self, t1, t2):
        if t1 == TOP or t2 == TOP:
            if t1 != TOP:
                self.check(t1)
            if t2 != TOP:
                self.check(t2)
            return TOP
        if t1 == t2:
            return self.check(t1)
        key = (t1, t2) if t1 < t2 else (t2, t1)
        try:
            return self._lub[key]
        except KeyError:
            self.check(t1)
            self.check(t2)
            raise

    def level(self, t):
        try:
            return self._levels[t]
        except KeyError:
            raise UnknownType(t) from None

    def upper_bounds(self, t):
        """All types at least as specific as ``t`` (including ``t``)."""
        self.check(t)
        return self._up[t]

    def parents(self, t):
        """Immediate more-general neighbours of ``t`` (the covering relation)."""
        self.check(t)
        return self._parents[t]

    def sorted_types(self):
        """Types ordered by level, then name; parents always precede children."""
        return sorted(self.types, key=lambda t: (self._levels[t], t))

    def declarations(self):
        """The irredundant ``{type: parents}`` mapping that reproduces this hierarchy."""
        return {t: self._parents[t] for t in self.sorted_types() if t != BOT}

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TypeHierarchy):
            return NotImplemented
        return self._up == other._up

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((t, frozenset(u)) for t, u in self._up.items()))
        return self._hash

    def __repr__(self):
        return "TypeHierarchy(%s)" % ", ".join(self.sorted_types())


def validate(declarations: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]]):
    """Check raw ``{type: parents}`` declarations and build a :class:`TypeHierarchy`.

    Types mentioned only as parents are implicitly declared under ``bot``.
    Raises :class:`CycleInHierarchy` for a non-antisymmetric declaration and
    :class:`NotBoundedComplete` when some pair of types has two incomparable
    minimal upper bounds.
    """
    items = declarations.items() if isinstance(declarations, Mapping) else declarations
    raw: dict[str, set[str]] = {BOT: set()}
    for name, parents in items:
        if name == TOP:
            raise HierarchyError("the inconsistent type cannot be declared")
        parents = set(parents)
        if name == BOT:
            if parents - {BOT}:
                raise HierarchyError("bot cannot have parents")
            continue
        raw.setdefault(name, set()).update(parents)
        for p in parents:
            if p == TOP:
                raise HierarchyError("the inconsistent type cannot be declared")
            raw.setdefault(p, set())
    for name, parents in raw.items():
        if name != BOT and not parents:
            parents.add(BOT)
        if name in parents:
            raise CycleInHierarchy([name, name])

    order = _topological(raw)

    # down[t]: t together with everything more general than t
    down: dict[str, frozenset[str]] = {}
    levels: dict[str, int] = {}
    for t in order:
        acc = {t}
        for p in raw[t]:
            acc |= down[p]
        down[t] = frozenset(acc)
        levels[t] = 1 + max(levels[p] for p in raw[t]) if raw[t] else 0

    up_sets: dict[str, set[str]] = {t: set() for t in raw}
    for t, gens in down.items():
        for g in gens:
            up_sets[g].add(t)
    up = {t: frozenset(s) for t, s in up_sets.items()}

    lub_table: dict[tuple[str, str], str] = {}
    for a, b in combinations(sorted(raw), 2):
        common = up[a] & up[b]
        if not common:
            lub_table[(a, b)] = TOP
            continue
        minimal = [m for m in common if not any(c != m and m in up[c] for c in common)]
        if len(minimal) != 1:
            raise NotBoundedComplete((a, b), minimal)
        lub_table[(a, b)] = minimal[0]

    covering = {}
    for t in raw:
        strict = down[t] - {t}
        covering[t] = tuple(sorted(p for p in strict if not any(p in down[q] for q in strict if q != p)))
    return TypeHierarchy(covering, up, levels, lub_table)


def _topological(raw):
    """Order types so every parent precedes its children; detect cycles."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(raw, WHITE)
    order: list[str] = []
    for start in sorted(raw):
        if colour[start] != WHITE:
            continue
        stack = [(start, iter(sorted(raw[start])))]
        colour[start] = GREY
        trail = [start]
        while stack:
            node, it = stack[-1]
            for p in it:
                if colour[p] == GREY:
                    cycle = trail[trail.index(p):] + [p]
                    raise CycleInHierarchy(cycle)
                if colour[p] == WHITE:
                    colour[p] = GREY
                    trail.append(p)
                    stack.append((p, iter(sorted(raw[p]))))
                    break
            else:
                stack.pop()
                trail.pop()
                colour[node] = BLACK
                order.append(node)
    return order


def lub(h: TypeHierarchy, t1: str, t2: str) -> str:
    return h.lub(t1, t2)


def subtype(h: TypeHierarchy, t1: str, t2: str) -> bool:
    return h.subtype(t1, t2)


def level(h: TypeHierarchy, t: str) -> int:
    return h.level(t)


def trivial() -> TypeHierarchy:
    """The hierarchy containing only ``bot``."""
    return validate({})
