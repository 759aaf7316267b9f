"""Bottom-up chart parsing over unification grammars.

Items are ``[i, sigma, j, k]``: ``sigma`` is a (specialised) copy of a rule
whose head and first ``k - 1`` body elements have been seen, spanning input
positions ``i+1..j``.  Lexical items ``[p-1, <Cat(w_p)>, p, 1]`` are complete
from the start.  The fundamental rule unifies the next expected element of
an active item with the head of a complete item that starts where the
active one ends; unification runs over the whole of ``sigma`` so
reentrancies between daughters and the mother propagate.

With the subsumption filter on, a cell ``(i, j, k)`` only keeps its most
general items: a new item is dropped if a kept one subsumes it, and it
evicts kept items it strictly subsumes.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

from .errors import CycleIntroduced, UnificationFailure
from .fs import FeatureStructure, Structure, copy, disjoint_parts, fresh_node, morphism, unify_graph
from .hierarchy import BOT
from .grammar import Grammar
from .mrs import MultiRootedStructure, as_mrs, project

__all__ = [
    "ParseConfig",
    "ChartItem",
    "Counters",
    "ParseResult",
    "Verdict",
    "item_leq",
    "parse",
    "restrict",
    "format_trace_line",
]


class Verdict(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    RESOURCE_LIMIT = "resource-limit"


@dataclass(frozen=True)
class ParseConfig:
    occurs_check: bool = True
    subsumption_filter: bool = True
    max_items: Optional[int] = 100_000
    restriction_depth: Optional[int] = None
    trace: bool = False
    empty_rules: bool = True
    # "unify": the start symbol must be consistent with the goal head;
    # "subsume": the start symbol must subsume the goal head.
    acceptance: str = "unify"

    def __post_init__(self):
        if self.max_items is not None and self.max_items < 1:
            raise ValueError("max_items must be at least 1")
        if self.restriction_depth is not None and self.restriction_depth < 0:
            raise ValueError("restriction_depth must be non-negative")
        if self.acceptance not in ("unify", "subsume"):
            raise ValueError("acceptance must be 'unify' or 'subsume'")


@dataclass(eq=False)
class ChartItem:
    id: int
    i: int
    j: int
    k: int
    sigma: MultiRootedStructure
    rule: str
    parents: tuple = ()
    dead: bool = field(default=False, repr=False)
    processed: bool = field(default=False, repr=False)

    @property
    def complete(self) -> bool:
        return self.k == len(self.sigma.roots)

    @property
    def active(self) -> bool:
        return not self.complete

    @property
    def head(self) -> FeatureStructure:
        return project(self.sigma, 1)

    @property
    def cell(self):
        return (self.i, self.j, self.k)

    def record(self) -> dict:
        return {
            "id": self.id,
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "rule": self.rule,
            "parents": list(self.parents),
            "mrs": self.sigma.canonical(),
        }


def item_leq(x: ChartItem, y: ChartItem) -> bool:
    """Equal indices and ``x.sigma`` subsumes ``y.sigma``."""
    return (x.i, x.j, x.k) == (y.i, y.j, y.k) and bool(morphism(x.sigma, y.sigma))


@dataclass
class Counters:
    generated: int = 0
    retained: int = 0
    pruned: int = 0
    replaced: int = 0
    duplicates: int = 0
    failed: int = 0
    cycles: int = 0

    def as_dict(self):
        return asdict(self)


@dataclass
class ParseResult:
    verdict: Verdict
    goals: tuple
    counters: Counters
    items: tuple
    n: int
    trace: list = field(default_factory=list)

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPT


def format_trace_line(rec: dict) -> str:
    return "ITEM %d [%d,%d,%d] rule=%s parents=(%s) mrs=%s" % (
        rec["id"],
        rec["i"],
        rec["j"],
        rec["k"],
        rec["rule"],
        ",".join(map(str, rec["parents"])),
        rec["mrs"],
    )


def format_trace_json(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False, sort_keys=True)


# ---------------------------------------------------------------------------
# restriction


def restrict(sigma: Structure, d: int) -> MultiRootedStructure:
    """Cut ``sigma`` at depth ``d`` below its roots.

    Nodes at depth ``d`` lose their arcs and become ``bot``; sharing among
    the kept nodes survives.  The result always subsumes ``sigma``, and for
    a fixed hierarchy, feature set and length there are finitely many
    results up to variance.
    """
    if d < 0:
        raise ValueError("depth must be non-negative")
    depth = {}
    frontier = []
    for r in sigma.roots:
        if r not in depth:
            depth[r] = 0
            frontier.append(r)
    level = 0
    while frontier and level < d:
        nxt = []
        for q in frontier:
            for tgt in sigma.arcs_of(q).values():
                if tgt not in depth:
                    depth[tgt] = level + 1
                    nxt.append(tgt)
        frontier = nxt
        level += 1
    ren = {q: fresh_node() for q in depth}
    types = {}
    arcs = {}
    for q, dq in depth.items():
        if dq < d:
            types[ren[q]] = sigma.type_of(q)
            fs = sigma.arcs_of(q)
            if fs:
                arcs[ren[q]] = {f: ren[t] for f, t in fs.items()}
        else:
            types[ren[q]] = BOT
    return MultiRootedStructure._make(sigma.hierarchy, tuple(ren[r] for r in sigma.roots), types, arcs)


# ---------------------------------------------------------------------------
# the engine


class _Halt(Exception):
    pass


def combine(sigma: Structure, k: int, rho: Structure, *, occurs_check=True) -> MultiRootedStructure:
    """Unify element ``k + 1`` of ``sigma`` with the head of ``rho``, keeping ``sigma``'s roots."""
    types, arcs, rroots = disjoint_parts(sigma, rho)
    roots, t, a = unify_graph(
        sigma.hierarchy,
        types,
        arcs,
        [(sigma.roots[k], rroots[0])],
        sigma.roots,
        occurs_check=occurs_check,
        report_roots=sigma.roots + rroots,
    )
    return MultiRootedStructure._make(sigma.hierarchy, roots, t, a)


class _Chart:
    def __init__(self, grammar: Grammar, words, cfg: ParseConfig):
        self.g = grammar
        self.words = words
        self.cfg = cfg
        self.counters = Counters()
        self.cells = defaultdict(list)
        self.keys = defaultdict(set)
        self.active_by_end = defaultdict(list)
        self.complete_by_start = defaultdict(list)
        self.agenda = deque()
        self.trace: list = []
        self.next_id = 1

    def offer(self, sigma, i, j, k, rule, parents=()):
        c = self.counters
        cfg = self.cfg
        c.generated += 1
        if cfg.restriction_depth is not None:
            sigma = restrict(sigma, cfg.restriction_depth)
        cell = (i, j, k)
        victims = ()
        if cfg.subsumption_filter:
            live = self.cells[cell]
            for y in live:
                if morphism(y.sigma, sigma):
                    c.pruned += 1
                    return None
            victims = [y for y in live if morphism(sigma, y.sigma)]
        else:
            key = sigma.canonical()
            if key in self.keys[cell]:
                c.duplicates += 1
                return None
            self.keys[cell].add(key)
        if cfg.max_items is not None and c.retained >= cfg.max_items:
            raise _Halt()
        item = ChartItem(self.next_id, i, j, k, sigma, rule, tuple(parents))
        self.next_id += 1
        c.retained += 1
        self.cells[cell].append(item)
        self.agenda.append(item)
        if cfg.trace:
            self.trace.append(item.record())
        for y in victims:
            y.dead = True
            self.cells[cell].remove(y)
            if y.processed:
                index = self.complete_by_start[y.i] if y.complete else self.active_by_end[y.j]
                index.remove(y)
            c.replaced += 1
        return item

    def seed(self):
        n = len(self.words)
        for p, w in enumerate(self.words, 1):
            self.offer(as_mrs(copy(self.g.category(w))), p - 1, p, 1, "lex:" + w)
        for p in range(n + 1):
            for r in self.g.rules:
                if len(r) == 1 and not self.cfg.empty_rules:
                    continue
                self.offer(copy(r.mrs), p, p, 1, r.name)

    def fundamental(self, a: ChartItem, c: ChartItem):
        try:
            sigma = combine(a.sigma, a.k, c.sigma, occurs_check=self.cfg.occurs_check)
        except CycleIntroduced:
            self.counters.cycles += 1
            return
        except UnificationFailure:
            self.counters.failed += 1
            return
        self.offer(sigma, a.i, c.j, a.k + 1, a.rule, (a.id, c.id))

    def run(self):
        self.seed()
        agenda = self.agenda
        while agenda:
            x = agenda.popleft()
            if x.dead:
                continue
            x.processed = True
            if x.complete:
                self.complete_by_start[x.i].append(x)
                for a in list(self.active_by_end[x.i]):
                    if x.dead:
                        break
                    if not a.dead:
                        self.fundamental(a, x)
            else:
                self.active_by_end[x.j].append(x)
                for c in list(self.complete_by_start[x.j]):
                    if x.dead:
                        break
                    if not c.dead:
                        self.fundamental(x, c)

    def live_items(self):
        return tuple(sorted((y for ys in self.cells.values() for y in ys), key=lambda y: y.id))

    def goals(self):
        n = len(self.words)
        start = self.g.start
        out = []
        for y in self.live_items():
            if y.i != 0 or y.j != n or not y.complete:
                continue
            if self.cfg.acceptance == "subsume":
                if morphism(start, y.head):
                    out.append(y)
                continue
            try:
                sigma = combine(y.sigma, 0, start, occurs_check=self.cfg.occurs_check)
            except UnificationFailure:
                continue
            out.append(replace(y, sigma=sigma))
        return tuple(out)


def parse(grammar: Grammar, words, config: Optional[ParseConfig] = None, **overrides) -> ParseResult:
    """Run the chart parser over ``words`` (a sequence or a whitespace-separated string)."""
    cfg = config or ParseConfig()
    if overrides:
        cfg = replace(cfg, **overrides)
    if isinstance(words, str):
        words = words.split()
    words = list(words)
    for w in words:
        grammar.category(w)
    chart = _Chart(grammar, words, cfg)
    try:
        chart.run()
    except _Halt:
        return ParseResult(Verdict.RESOURCE_LIMIT, (), chart.counters, chart.live_items(), len(words), chart.trace)
    goals = chart.goals()
    verdict = Verdict.ACCEPT if goals else Verdict.REJECT
    return ParseResult(verdict, goals, chart.counters, chart.live_items(), len(words), chart.trace)
