import random

import pytest

from tfsgram.avm import parse_avm, parse_mrs, serialize, tokenize
from tfsgram.errors import IndexOutOfRange, ParseError, UnknownType, WordNotInLexicon
from tfsgram.fs import cyclic_chain, is_cyclic, variant
from tfsgram.generate import random_fs, random_grammar, random_hierarchy, random_mrs
from tfsgram.grammar import (
    Grammar,
    Rule,
    bundled_grammar,
    load_grammar,
    load_hierarchy,
    preterminals,
    serialize_grammar,
    serialize_hierarchy,
)
from tfsgram.hierarchy import BOT, validate
from tfsgram.mrs import MultiRootedStructure, mrs_variant, project

TINY = """
type t.
word "w" := t.
start := t.
"""


# -- AVM syntax ------------------------------------------------------------


def test_canonical_form_sorts_features_and_numbers_tags(th):
    a = parse_avm("t(g: #7 = bot, f: #7)", th)
    assert a.canonical() == "t(f: #1 = bot, g: #1)"
    b = parse_avm("t(f: #2, g: #2 = bot)", th)
    assert a.canonical() == b.canonical() and variant(a, b)


def test_bare_tag_defaults_to_bot(th):
    a = parse_avm("t(f: #1, g: #1)", th)
    assert a.canonical() == "t(f: #1 = bot, g: #1)"


def test_repeated_definition_unifies(th):
    a = parse_avm("t(f: #1 = bot(g: bot), h: #1 = t)", th)
    assert a.canonical() == "t(f: #1 = t(g: bot), h: #1)"


def test_cyclic_avm(th):
    a = parse_avm("#1 = bot(f: #1)", th)
    assert is_cyclic(a)
    assert variant(a, cyclic_chain(0))
    assert a.canonical() == "#1 = bot(f: #1)"


def test_mrs_tags_span_elements(th):
    s = parse_mrs("<t(f: #1), #1 = t>", th)
    assert s.canonical() == "<t(f: #1 = t), #1>"
    assert parse_mrs("<>", th).canonical() == "<>"


def test_unknown_type_has_location(th):
    with pytest.raises(UnknownType) as e:
        parse_avm("t(f:\n  zork)", th)
    assert (e.value.line, e.value.column) == (2, 3)


@pytest.mark.parametrize(
    "text",
    ["t(f: bot, f: bot)", "t(f bot)", "t(", "#1 = ", "t) ", "t(f: bot))", "t @"],
)
def test_syntax_errors(th, text):
    with pytest.raises(ParseError):
        parse_avm(text, th)


def test_comments_and_whitespace(th):
    toks = tokenize("t % a comment\n (f: bot)")
    assert [t.value for t in toks if t.kind != "eof"] == ["t", "(", "f", ":", "bot", ")"]


def test_avm_round_trip_random():
    rng = random.Random(7)
    for i in range(300):
        h = random_hierarchy(rng, 3)
        cyc = i % 3 == 0
        a = random_fs(rng, h, max_nodes=7, share=0.5, cyclic=cyc)
        b = parse_avm(serialize(a), h)
        assert variant(a, b) and b.canonical() == a.canonical()
        s = random_mrs(rng, h, rng.randint(0, 3), cyclic=cyc)
        t = parse_mrs(serialize(s), h)
        assert mrs_variant(s, t) and t.canonical() == s.canonical()


# -- grammar files ---------------------------------------------------------


def test_fig2_loads(fig2):
    assert len(fig2.rules) == 2 and len(fig2.lexicon) == 3
    assert fig2.start.canonical() == "phrase(CAT: s)"
    assert fig2.name == "fig2"
    assert [r.name for r in fig2.rules] == ["s_np_vp", "vp_v_np"]
    assert fig2.hierarchy.lub("sign", "phrase") == "phrase"


def test_rule_sharing_from_file(fig2):
    r = fig2.rule("s_np_vp")
    head, np, vp = (project(r.mrs, i) for i in (1, 2, 3))
    assert head.arcs_of(head.root)["AGR"] == np.arcs_of(np.root)["AGR"] == vp.arcs_of(vp.root)["AGR"]
    assert head.arcs_of(head.root)["SEM"] == vp.arcs_of(vp.root)["SEM"]


def test_empty_rules_section():
    g = load_grammar(TINY)
    assert g.rules == () and not g.has_empty_rules


def test_empty_bodied_rule():
    g = load_grammar(TINY.replace("start", "rule e : t -> .\nstart"))
    assert len(g.rule("e")) == 1 and g.has_empty_rules


def test_rule_with_undeclared_type_is_located():
    text = TINY.replace("start", "rule r : t -> \n   foo.\nstart")
    with pytest.raises(UnknownType) as e:
        load_grammar(text)
    assert e.value.name == "foo" and e.value.line == 5 and e.value.column == 4


def test_undeclared_parent():
    with pytest.raises(UnknownType):
        load_grammar("type a < q.\nword \"x\" := a.\nstart := a.")


def test_duplicate_word_rejected():
    with pytest.raises(ParseError, match="lexical ambiguity"):
        load_grammar(TINY.replace("start", 'word "w" := bot.\nstart'))


def test_duplicate_rule_and_type_rejected():
    with pytest.raises(ParseError):
        load_grammar(TINY.replace("start", "rule r : t -> t.\nrule r : t -> t.\nstart"))
    with pytest.raises(ParseError):
        load_grammar("type t.\ntype t.\nword \"w\" := t.\nstart := t.")


def test_declared_features_are_enforced():
    g = load_grammar("type t.\nfeat f.\nword \"w\" := t(f: bot).\nstart := t.")
    assert g.features == {"f"}
    with pytest.raises(ParseError, match="undeclared feature"):
        load_grammar("type t.\nfeat f.\nword \"w\" := t(g: bot).\nstart := t.")


def test_statement_order_enforced():
    with pytest.raises(ParseError):
        load_grammar('word "w" := bot.\ntype t.\nstart := t.')
    with pytest.raises(ParseError):
        load_grammar(TINY + "start := t.")
    with pytest.raises(ParseError):
        load_grammar("type t.\nstart := t.")


def test_not_bounded_complete_file():
    from tfsgram.errors import NotBoundedComplete
    from tfsgram.grammar import bundled_path

    with pytest.raises(NotBoundedComplete):
        load_grammar(bundled_path("not_bounded_complete.tfg").read_text())


def test_hierarchy_file_round_trip(diamond):
    assert load_hierarchy(serialize_hierarchy(diamond)) == diamond
    assert load_hierarchy(serialize_hierarchy(validate({}))) == validate({})


def test_grammar_round_trip_fixed(fig2, olp):
    for g in (fig2, olp):
        text = serialize_grammar(g)
        g2 = load_grammar(text)
        assert serialize_grammar(g2) == text
        assert g2.hierarchy == g.hierarchy
        for a, b in zip(g.rules, g2.rules):
            assert a.name == b.name and mrs_variant(a.mrs, b.mrs)


def test_grammar_round_trip_random():
    rng = random.Random(3)
    for i in range(50):
        g = random_grammar(rng, cyclic=i % 4 == 0)
        text = serialize_grammar(g)
        g2 = load_grammar(text)
        assert serialize_grammar(g2) == text
        assert variant(g.start, g2.start)
        for w in g.lexicon:
            assert variant(g.lexicon[w], g2.lexicon[w])


def test_lexicon_must_be_node_disjoint(th):
    a = parse_avm("t", th)
    with pytest.raises(ValueError):
        Grammar(th, (), a, {"x": a, "y": a})


def test_mixed_hierarchies_rejected(th, diamond):
    with pytest.raises(ValueError):
        Grammar(th, (), parse_avm("a", diamond), {"x": parse_avm("t", th)})


# -- pre-terminals ---------------------------------------------------------


def test_preterminals(fig2):
    w = "john loves her".split()
    assert len(preterminals(fig2, w, 2, 1)) == 0
    pt = preterminals(fig2, w, 1, 1)
    assert len(pt) == 1 and variant(project(pt, 1), fig2.lexicon["john"])
    pt = preterminals(fig2, ["john", "john"], 1, 2)
    a, b = project(pt, 1), project(pt, 2)
    assert a.nodes.isdisjoint(b.nodes) and variant(a, b)
    assert a.nodes.isdisjoint(fig2.lexicon["john"].nodes)
    assert len(preterminals(fig2, w, 1, 3)) == 3
    with pytest.raises(IndexOutOfRange):
        preterminals(fig2, w, 1, 4)
    with pytest.raises(WordNotInLexicon):
        preterminals(fig2, ["bob"], 1, 1)


def test_rule_str(olp):
    assert str(olp.rule("r")) == "r : t(f: #1 = t(f: bot)) -> #1"
