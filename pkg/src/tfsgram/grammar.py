"""Grammars, lexicons, pre-terminals and the grammar file format.

A grammar file is a sequence of ``.``-terminated statements in a fixed
order; ``%`` starts a comment::

    grammar fig2.                       % optional header
    type sign.                          % parent defaults to bot
    type word < sign.                   % parents follow "<"
    feat CAT, AGR.                      % optional; if present, closes the feature set
    word "john" := word(CAT: n).
    rule s_np_vp : phrase(CAT: s) -> sign(CAT: n) sign(CAT: v).
    start := phrase(CAT: s).

Any element position accepts a tagged AVM (``#1 = ...``); within a rule the
scope of a tag is the whole rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FilePath
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .avm import NAME_RE, Reader, serialize_elements, tokenize
from .errors import IndexOutOfRange, ParseError, UnknownType, WordNotInLexicon
from .fs import FeatureStructure, copy, same_hierarchy
from .hierarchy import BOT, TypeHierarchy, validate
from .mrs import MultiRootedStructure, concatenate, project

__all__ = [
    "Rule",
    "Grammar",
    "load_grammar",
    "load_grammar_file",
    "load_hierarchy",
    "serialize_grammar",
    "serialize_hierarchy",
    "preterminals",
    "bundled_path",
    "bundled_grammar",
]


@dataclass(frozen=True)
class Rule:
    """A named MRS whose first element is the head and the rest the body."""

    name: str
    mrs: MultiRootedStructure

    def __post_init__(self):
        if len(self.mrs) < 1:
            raise ValueError("a rule needs at least a head")

    def __len__(self):
        return len(self.mrs)

    @property
    def head(self) -> FeatureStructure:
        return project(self.mrs, 1)

    @property
    def body(self):
        return tuple(project(self.mrs, i) for i in range(2, len(self.mrs) + 1))

    def __str__(self):
        head, *body = serialize_elements(self.mrs)
        return "%s : %s -> %s" % (self.name, head, " ".join(body))


@dataclass(frozen=True)
class Grammar:
    hierarchy: TypeHierarchy
    rules: tuple
    start: FeatureStructure
    lexicon: Mapping[str, FeatureStructure]
    features: Optional[frozenset] = None
    name: Optional[str] = None
    _rule_index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lexicon", MappingProxyType(dict(self.lexicon)))
        object.__setattr__(self, "rules", tuple(self.rules))
        seen_nodes: set = set()
        for s in (self.start, *self.lexicon.values(), *(r.mrs for r in self.rules)):
            if s.hierarchy != self.hierarchy:
                raise ValueError("grammar structures must share the grammar's hierarchy")
        for cat in self.lexicon.values():
            if not seen_nodes.isdisjoint(cat.nodes):
                raise ValueError("lexical categories must be node-disjoint")
            seen_nodes |= cat.nodes
        for r in self.rules:
            if r.name in self._rule_index:
                raise ValueError("duplicate rule name %r" % r.name)
            self._rule_index[r.name] = r

    def rule(self, name: str) -> Rule:
        return self._rule_index[name]

    def category(self, word: str) -> FeatureStructure:
        try:
            return self.lexicon[word]
        except KeyError:
            raise WordNotInLexicon(word) from None

    @property
    def has_empty_rules(self) -> bool:
        return any(len(r) == 1 for r in self.rules)


def preterminals(g: Grammar, words: Sequence[str], j: int, k: int) -> MultiRootedStructure:
    """Fresh copies of the categories of ``words[j..k]`` (1-based, inclusive).

    Empty when ``j > k``; repeated words get independent copies.
    """
    if j > k:
        return MultiRootedStructure.empty(g.hierarchy)
    n = len(words)
    if not (1 <= j <= n and 1 <= k <= n):
        raise IndexOutOfRange("pre-terminal span %d..%d outside 1..%d" % (j, k, n))
    return concatenate([copy(g.category(w)) for w in words[j - 1 : k]])


# ---------------------------------------------------------------------------
# loading


class _GrammarReader(Reader):
    def keyword(self, word):
        return self.at(word, "name")

    def read_types(self):
        decls: dict = {}
        where: dict = {}
        if not self.keyword("type"):
            raise self.error("expected a type declaration")
        while self.keyword("type"):
            self.next()
            tok = self.expect(None, "name")
            if tok.value in decls:
                raise self.error("type %r declared twice" % tok.value, tok)
            parents = []
            if self.at("<"):
                self.next()
                parents.append(self.expect(None, "name"))
                while self.at(","):
                    self.next()
                    parents.append(self.expect(None, "name"))
            self.expect(".")
            if tok.value == BOT:
                if parents:
                    raise self.error("bot cannot have parents", parents[0])
                continue
            decls[tok.value] = [p.value for p in parents]
            where[tok.value] = tok
            for p in parents:
                where.setdefault((tok.value, p.value), p)
        for name, parents in decls.items():
            for p in parents:
                if p != BOT and p not in decls:
                    ptok = where[(name, p)]
                    raise UnknownType(p, ptok.line, ptok.col)
        return validate(decls)

    def read_names(self):
        names = [self.expect(None, "name").value]
        while self.at(","):
            self.next()
            names.append(self.expect(None, "name").value)
        return names


def _read_grammar(text: str) -> Grammar:
    r = _GrammarReader(tokenize(text), validate({}))
    name = None
    if r.keyword("grammar"):
        r.next()
        name = r.expect(None, "name").value
        r.expect(".")
    h = r.read_types()
    r.hierarchy = h
    features = None
    if r.keyword("feat"):
        features = set()
        while r.keyword("feat"):
            r.next()
            features.update(r.read_names())
            r.expect(".")
        features = frozenset(features)
        r.features = features

    lexicon: dict = {}
    if not r.keyword("word"):
        raise r.error("expected a lexical entry")
    while r.keyword("word"):
        r.next()
        tok = r.expect(None, "string")
        if tok.value in lexicon:
            raise r.error("duplicate lexical entry for %r (lexical ambiguity is not supported)" % tok.value, tok)
        r.expect(":=")
        lexicon[tok.value] = r.read_avm()
        r.expect(".")

    rules = []
    names = set()
    while r.keyword("rule"):
        r.next()
        tok = r.expect(None, "name")
        if tok.value in names:
            raise r.error("duplicate rule name %r" % tok.value, tok)
        names.add(tok.value)
        r.expect(":")
        roots = [r.tagged()]
        r.expect("->")
        while not r.at("."):
            if r.at(None, "eof"):
                raise r.error("unterminated rule %r" % tok.value)
            roots.append(r.tagged())
        r.expect(".")
        rules.append(Rule(tok.value, r.finish(roots, MultiRootedStructure, tok)))

    if not r.keyword("start"):
        raise r.error("expected a rule or the start symbol")
    r.next()
    r.expect(":=")
    start = r.read_avm()
    r.expect(".")
    r.expect(None, "eof")
    return Grammar(h, tuple(rules), start, lexicon, features, name)


def load_grammar(text: str) -> Grammar:
    """Parse and validate grammar source text."""
    return _read_grammar(text)


def load_grammar_file(path) -> Grammar:
    return load_grammar(FilePath(path).read_text(encoding="utf-8"))


def load_hierarchy(text: str) -> TypeHierarchy:
    """Parse a file holding only ``type`` declarations."""
    r = _GrammarReader(tokenize(text), validate({}))
    h = r.read_types()
    r.expect(None, "eof")
    return h


# ---------------------------------------------------------------------------
# serialization


def _quote(word: str) -> str:
    return '"%s"' % word.replace("\\", "\\\\").replace('"', '\\"')


def _check_name(name: str, what: str):
    if not NAME_RE.match(name):
        raise ValueError("%s %r cannot be written in the grammar format" % (what, name))


def serialize_hierarchy(h: TypeHierarchy) -> str:
    lines = []
    for t, parents in h.declarations().items():
        _check_name(t, "type")
        if parents == (BOT,):
            lines.append("type %s." % t)
        else:
            lines.append("type %s < %s." % (t, ", ".join(parents)))
    if not lines:
        lines.append("type %s." % BOT)
    return "\n".join(lines) + "\n"


def serialize_grammar(g: Grammar) -> str:
    """Canonical grammar text; loading it back yields variants of every structure."""
    out = []
    if g.name:
        out.append("grammar %s.\n" % g.name)
    out.append(serialize_hierarchy(g.hierarchy))
    if g.features is not None:
        out.append("feat %s.\n" % ", ".join(sorted(g.features)))
    for word, cat in g.lexicon.items():
        out.append("word %s := %s.\n" % (_quote(word), cat.canonical()))
    for rule in g.rules:
        out.append("rule %s.\n" % rule)
    out.append("start := %s.\n" % g.start.canonical())
    return "".join(out)


# ---------------------------------------------------------------------------
# bundled grammars


def bundled_path(name: str) -> FilePath:
    """Path of a grammar shipped in ``tfsgram/data`` (e.g. ``"fig2.tfg"``)."""
    with resources.as_file(resources.files("tfsgram") / "data" / name) as p:
        return FilePath(p)


def bundled_grammar(name: str) -> Grammar:
    return load_grammar(bundled_path(name).read_text(encoding="utf-8"))
