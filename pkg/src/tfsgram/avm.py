"""Textual attribute-value matrix syntax.

::

    AVM    := NAME | NAME "(" FEAT ":" TAGGED ("," FEAT ":" TAGGED)* ")"
    TAGGED := ("#" INT "=")? AVM | "#" INT
    MRS    := "<" (TAGGED ("," TAGGED)*)? ">"

``#n = avm`` names a node, a bare ``#n`` refers back to it; a tag that is
only ever referenced denotes a ``bot`` node.  Defining the same tag twice
unifies the two definitions.  The scope of a tag is one AVM or one MRS.

The serializer emits a canonical form: features in lexicographic order and
tags numbered by first occurrence, so two structures serialize identically
exactly when they are alphabetic variants.
"""

from __future__ import annotations

import re
from typing import NamedTuple, Optional

from .errors import ParseError, UnificationFailure, UnknownType
from .fs import FeatureStructure, Structure, fresh_node, unify_graph
from .hierarchy import BOT, TypeHierarchy
from .mrs import MultiRootedStructure

__all__ = ["parse_avm", "parse_mrs", "serialize", "serialize_elements", "tokenize", "Token"]


class Token(NamedTuple):
    kind: str  # name, string, tag, punct, eof
    value: object
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<tag>\#[0-9]+)
  | (?P<name>[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<punct>:=|->|[():,.<>=])
    """,
    re.VERBOSE,
)

NAME_RE = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "string":
            out.append(Token("string", re.sub(r"\\(.)", r"\1", s[1:-1]), line, col))
        elif kind == "tag":
            out.append(Token("tag", int(s[1:]), line, col))
        elif kind in ("name", "punct"):
            out.append(Token(kind, s, line, col))
        newlines = s.count("\n")
        if newlines:
            line += newlines
            line_start = pos + s.rindex("\n") + 1
        pos = m.end()
    out.append(Token("eof", None, line, pos - line_start + 1))
    return out


class Reader:
    """Recursive-descent reader over a token list; shared with the grammar loader."""

    def __init__(self, tokens, hierarchy: TypeHierarchy, features=None):
        self.tokens = tokens
        self.pos = 0
        self.hierarchy = hierarchy
        self.features = features
        self.begin()

    # -- token helpers ---------------------------------------------------

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, value, kind="punct"):
        tok = self.tokens[self.pos]
        return tok.kind == kind and (value is None or tok.value == value)

    def error(self, message, tok=None) -> ParseError:
        tok = tok or self.peek
        return ParseError(message, tok.line, tok.col)

    def expect(self, value, kind="punct") -> Token:
        tok = self.peek
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            got = "end of input" if tok.kind == "eof" else repr(tok.value)
            raise self.error("expected %r, found %s" % (want, got))
        return self.next()

    # -- structures ------------------------------------------------------

    def begin(self):
        """Start a fresh tag scope and graph."""
        self.types: dict = {}
        self.arcs: dict = {}
        self.tags: dict = {}
        self.defined: set = set()
        self.equations: list = []

    def tagged(self):
        if self.at(None, "tag"):
            tok = self.next()
            node = self.tags.get(tok.value)
            if node is None:
                node = self.tags[tok.value] = fresh_node()
            if not self.at("="):
                return node
            self.next()
            if node in self.defined:
                other = fresh_node()
                self.avm(other)
                self.equations.append((node, other))
            else:
                self.defined.add(node)
                self.avm(node)
            return node
        node = fresh_node()
        self.avm(node)
        return node

    def avm(self, node):
        tok = self.expect(None, "name")
        if tok.value not in self.hierarchy:
            raise UnknownType(tok.value, tok.line, tok.col)
        self.types[node] = tok.value
        if not self.at("("):
            return
        self.next()
        feats: dict = {}
        while True:
            ftok = self.expect(None, "name")
            if self.features is not None and ftok.value not in self.features:
                raise self.error("undeclared feature %r" % ftok.value, ftok)
            if ftok.value in feats:
                raise self.error("feature %r given twice" % ftok.value, ftok)
            self.expect(":")
            feats[ftok.value] = self.tagged()
            if self.at(","):
                self.next()
                continue
            self.expect(")")
            break
        self.arcs[node] = feats

    def finish(self, roots, cls=MultiRootedStructure, tok=None):
        """Close the current scope into a structure rooted at ``roots``."""
        if len(set(roots)) != len(roots):
            raise self.error("the same node is used as two roots", tok)
        for node in self.tags.values():
            self.types.setdefault(node, BOT)
        types, arcs = self.types, self.arcs
        if self.equations:
            try:
                roots, types, arcs = unify_graph(
                    self.hierarchy, types, arcs, self.equations, roots, occurs_check=False
                )
            except UnificationFailure as exc:
                raise self.error("conflicting tag definitions: %s" % exc, tok) from None
        out = cls._make(self.hierarchy, tuple(roots), types, arcs)
        self.begin()
        return out

    def read_avm(self) -> FeatureStructure:
        tok = self.peek
        root = self.tagged()
        return self.finish([root], FeatureStructure, tok)

    def read_mrs(self) -> MultiRootedStructure:
        tok = self.expect("<")
        roots = []
        if not self.at(">"):
            roots.append(self.tagged())
            while self.at(","):
                self.next()
                roots.append(self.tagged())
        self.expect(">")
        return self.finish(roots, MultiRootedStructure, tok)


def parse_avm(text: str, hierarchy: TypeHierarchy, features=None) -> FeatureStructure:
    r = Reader(tokenize(text), hierarchy, features)
    out = r.read_avm()
    r.expect(None, "eof")
    return out


def parse_mrs(text: str, hierarchy: TypeHierarchy, features=None) -> MultiRootedStructure:
    r = Reader(tokenize(text), hierarchy, features)
    out = r.read_mrs()
    r.expect(None, "eof")
    return out


def _refcounts(s: Structure):
    counts = dict.fromkeys(s._types, 0)
    for r in s.roots:
        counts[r] += 1
    for _, _, tgt in s.arc_items():
        counts[tgt] += 1
    return counts


def serialize_elements(s: Structure) -> list[str]:
    """Canonical text of each root, with tags numbered across the whole sequence."""
    counts = _refcounts(s)
    tags: dict = {}
    out: list[str] = []
    elements = []
    for r in s.roots:
        stack = [r]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                out.append(item)
                continue
            q = item
            tag = tags.get(q)
            if tag is not None:
                out.append("#%d" % tag)
                continue
            if counts[q] > 1:
                tag = tags[q] = len(tags) + 1
                out.append("#%d = " % tag)
            out.append(s._types[q])
            fs = s.arcs_of(q)
            if fs:
                out.append("(")
                stack.append(")")
                items = sorted(fs.items())
                for idx in range(len(items) - 1, -1, -1):
                    f, tgt = items[idx]
                    stack.append(tgt)
                    stack.append(("%s: " if idx == 0 else ", %s: ") % f)
        elements.append("".join(out))
        out.clear()
    return elements


def serialize(s: Structure) -> str:
    if isinstance(s, MultiRootedStructure):
        return "<" + ", ".join(serialize_elements(s)) + ">"
    return serialize_elements(s)[0]
