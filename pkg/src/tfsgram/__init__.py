"""Typed feature structures, unification grammars and a chart parser.

The common entry points are re-exported here::

    from tfsgram import bundled_grammar, parse
    g = bundled_grammar("fig2.tfg")
    parse(g, "john loves her").verdict      # Verdict.ACCEPT
"""

from .avm import parse_avm, parse_mrs, serialize
from .chart import ParseConfig, ParseResult, Verdict, item_leq, parse, restrict
from .derivation import Answer, derives_bounded, immediate_derives, in_language_bounded
from .errors import (
    CycleInHierarchy,
    CycleIntroduced,
    CyclicStructure,
    HierarchyError,
    Inconsistent,
    NotBoundedComplete,
    NotStrict,
    ParseError,
    TFSError,
    UnificationFailure,
    UnknownType,
    WordNotInLexicon,
)
from .fs import (
    FeatureStructure,
    NewPath,
    NewReentrancy,
    NoMorphism,
    SubsumptionMorphism,
    TypePromotion,
    copy,
    cyclic_chain,
    is_cyclic,
    paths,
    rank,
    rank_components,
    resolve,
    spec_chain,
    strictly_subsumes,
    strictness_witness,
    subsumes,
    unify,
    variant,
)
from .grammar import (
    Grammar,
    Rule,
    bundled_grammar,
    load_grammar,
    load_grammar_file,
    load_hierarchy,
    preterminals,
    serialize_grammar,
)
from .hierarchy import BOT, TOP, TypeHierarchy, validate
from .mrs import (
    MultiRootedStructure,
    mrs_paths,
    mrs_rank,
    mrs_subsumes,
    project,
    rename_apart,
    substructure,
)

__version__ = "0.1.0"
