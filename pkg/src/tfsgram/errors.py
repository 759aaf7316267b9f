"""Exception hierarchy shared by every tfsgram module."""

from __future__ import annotations


class TFSError(Exception):
    """Base class for all tfsgram errors."""


class HierarchyError(TFSError):
    pass


class CycleInHierarchy(HierarchyError):
    def __init__(self, types):
        self.types = tuple(types)
        super().__init__("subtype declarations form a cycle: " + " < ".join(self.types))


class NotBoundedComplete(HierarchyError):
    def __init__(self, pair, bounds):
        self.pair = tuple(pair)
        self.bounds = tuple(sorted(bounds))
        super().__init__(
            "types %s and %s have incomparable minimal upper bounds: %s"
            % (self.pair[0], self.pair[1], ", ".join(self.bounds))
        )


class UnknownType(TFSError, KeyError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        self.line = line
        self.column = column
        where = "" if line is None else " at line %d, column %d" % (line, column)
        TFSError.__init__(self, "unknown type %r%s" % (name, where))

    def __str__(self):
        return self.args[0]


class HierarchyMismatch(TFSError, ValueError):
    """Raised when structures over different type hierarchies are combined."""


class CyclicStructure(TFSError, ValueError):
    """Raised by operations that are only defined on acyclic structures."""


class NotStrict(TFSError, ValueError):
    """Raised when a strictness witness is requested for a non-strict pair."""


class UnificationFailure(TFSError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        super().__init__(message)


class Inconsistent(UnificationFailure):
    def __init__(self, path=(), types=()):
        self.types = tuple(types)
        super().__init__(
            "inconsistent types %s at path <%s>" % (" + ".join(self.types), " ".join(path)), path
        )


class CycleIntroduced(UnificationFailure):
    def __init__(self, path=()):
        super().__init__("unification creates a cycle at path <%s>" % " ".join(path), path)


class IndexOutOfRange(TFSError, IndexError):
    pass


class ParseError(TFSError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)


class WordNotInLexicon(TFSError, KeyError):
    def __init__(self, word):
        self.word = word
        TFSError.__init__(self, "word not in lexicon: %r" % word)

    def __str__(self):
        return self.args[0]
