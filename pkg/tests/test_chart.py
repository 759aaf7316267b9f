import random

import pytest

from tfsgram.avm import parse_avm, parse_mrs
from tfsgram.chart import (
    ChartItem,
    ParseConfig,
    Verdict,
    _Chart,
    format_trace_line,
    item_leq,
    parse,
    restrict,
)
from tfsgram.derivation import Answer, derives_bounded
from tfsgram.errors import WordNotInLexicon
from tfsgram.fs import FeatureStructure, morphism, spec_chain, variant
from tfsgram.generate import random_hierarchy, random_mrs
from tfsgram.grammar import load_grammar, preterminals
from tfsgram.mrs import MultiRootedStructure, mrs_variant, project, substructure

CYCLE_GRAMMAR = """
type t.
type u.
word "w" := u(f: #1 = bot, g: #1).
rule r : t -> bot(f: #1, g: bot(f: #1)).
start := t.
"""


def test_fig2_accepts(fig2):
    res = parse(fig2, "john loves her")
    assert res.verdict is Verdict.ACCEPT and res.accepted
    (goal,) = res.goals
    assert (goal.i, goal.j) == (0, 3) and goal.complete
    assert project(goal.sigma, 1).canonical() == (
        "phrase(AGR: agr(NUM: sg, PER: 3rd), CAT: s, SEM: sem(ARG1: john, ARG2: she, PRED: love))"
    )


def test_fig2_rejects(fig2):
    assert parse(fig2, "her loves john").verdict is Verdict.REJECT
    assert parse(fig2, "loves john her").verdict is Verdict.REJECT
    assert parse(fig2, "john loves john").verdict is Verdict.ACCEPT


def test_empty_input(fig2):
    res = parse(fig2, "")
    assert res.verdict is Verdict.REJECT and res.n == 0


def test_unknown_word(fig2):
    with pytest.raises(WordNotInLexicon) as e:
        parse(fig2, "john loves mary")
    assert e.value.word == "mary"


def test_olp_with_filter(olp):
    res = parse(olp, "w1", max_items=1000)
    assert res.accepted
    assert res.counters.retained <= 20 and res.counters.pruned >= 1


def test_olp_without_filter_hits_cap(olp):
    res = parse(olp, ["w1"], subsumption_filter=False, max_items=1000)
    assert res.verdict is Verdict.RESOURCE_LIMIT
    assert res.counters.retained == 1000 and res.goals == ()


def test_restriction_makes_unfiltered_parse_terminate(olp):
    res = parse(olp, "w1", subsumption_filter=False, restriction_depth=1)
    assert res.accepted and res.counters.retained < 20


def test_occurs_check_discards_cyclic_combinations():
    g = load_grammar(CYCLE_GRAMMAR)
    res = parse(g, "w")
    assert res.verdict is Verdict.REJECT and res.counters.cycles == 1
    res = parse(g, "w", occurs_check=False)
    assert res.accepted and res.counters.cycles == 0


def test_acceptance_modes(fig2):
    # phrase(CAT: s) does not subsume a head without CAT, but is consistent with it
    g = load_grammar("type t.\ntype u < t.\nword \"w\" := t.\nstart := u.")
    assert parse(g, "w").accepted
    assert not parse(g, "w", acceptance="subsume").accepted
    assert parse(fig2, "john loves her", acceptance="subsume").accepted


def test_config_validation():
    with pytest.raises(ValueError):
        ParseConfig(max_items=0)
    with pytest.raises(ValueError):
        ParseConfig(restriction_depth=-1)
    with pytest.raises(ValueError):
        ParseConfig(acceptance="maybe")


def test_trace(olp):
    res = parse(olp, "w1", trace=True)
    assert len(res.trace) == res.counters.retained
    line = format_trace_line(res.trace[0])
    assert line == "ITEM 1 [0,1,1] rule=lex:w1 parents=() mrs=<t(f: bot)>"
    assert format_trace_line(res.trace[-1]).startswith("ITEM 4 [0,1,2] rule=r parents=(2,1) ")


def test_empty_rules_can_be_disabled():
    g = load_grammar("type t.\nword \"w\" := t.\nrule e : t -> .\nrule r : t -> t t.\nstart := t.")
    assert parse(g, "w").accepted
    assert parse(g, "").accepted
    assert not parse(g, "", empty_rules=False).accepted


# -- item order and the filter ---------------------------------------------


def _item(s, i=0, j=1, k=1, ident=1):
    return ChartItem(ident, i, j, k, MultiRootedStructure.of(s) if isinstance(s, FeatureStructure) else s, "r")


def test_item_leq(th):
    gen = _item(parse_avm("t(f: bot)", th))
    spec = _item(parse_avm("t(f: t)", th))
    assert item_leq(gen, gen)
    assert item_leq(gen, spec) and not item_leq(spec, gen)
    assert not item_leq(gen, _item(parse_avm("t(f: t)", th), j=2))


def test_general_item_replaces_specific(olp):
    chart = _Chart(olp, ["w1"], ParseConfig())
    h = olp.hierarchy
    first = chart.offer(parse_mrs("<t(f: t)>", h), 0, 1, 1, "x")
    assert first is not None
    assert chart.offer(parse_mrs("<t(f: t)>", h), 0, 1, 1, "x") is None
    second = chart.offer(parse_mrs("<t(f: bot)>", h), 0, 1, 1, "x")
    assert first.dead and not second.dead
    assert chart.counters.replaced == 1 and chart.counters.pruned == 1
    assert chart.live_items() == (second,)


def _check_chart(g, words, res):
    n = len(words)
    cells = {}
    for y in res.items:
        assert 0 <= y.i <= y.j <= n and 0 < y.k <= len(y.sigma)
        cells.setdefault(y.cell, []).append(y)
    for ys in cells.values():
        for a in ys:
            for b in ys:
                assert a is b or not morphism(a.sigma, b.sigma)
    return cells


def test_chart_invariants_fig2(fig2):
    words = "john loves her".split()
    res = parse(fig2, words)
    _check_chart(fig2, words, res)


TINY_GRAMMARS = [
    "type a.\ntype b.\ntype c < a, b.\nword \"w1\" := a.\nword \"w2\" := b.\n"
    "rule r1 : c -> a b.\nrule r2 : a -> c.\nstart := c.",
    "type t.\nword \"w1\" := t(f: t).\nword \"w2\" := bot(g: t).\n"
    "rule r1 : t(f: #1, g: #2) -> bot(f: #1) bot(g: #2).\nstart := t(f: t).",
    "type t.\nword \"w1\" := t(f: bot).\nword \"w2\" := t.\n"
    "rule r1 : t(f: #1) -> #1 = t(f: bot).\nrule r2 : t -> t t.\nstart := t.",
]


@pytest.mark.parametrize("text", TINY_GRAMMARS)
def test_parsing_invariant_against_oracle(text):
    """Every retained item's consumed part derives the span it covers."""
    g = load_grammar(text)
    for words in (["w1"], ["w2"], ["w1", "w2"], ["w2", "w1", "w2"]):
        res = parse(g, words, max_items=2000)
        assert res.verdict is not Verdict.RESOURCE_LIMIT
        _check_chart(g, words, res)
        for y in res.items:
            pt = preterminals(g, words, y.i + 1, y.j)
            if y.rule.startswith("lex:") or y.complete:
                src = substructure(y.sigma, 1, 1)
            else:
                src = substructure(y.sigma, 2, y.k)
            assert derives_bounded(g, src, pt, 4) is not Answer.NO, (y, words)


# -- restriction -----------------------------------------------------------


def test_restrict_depth_zero(th):
    s = parse_mrs("<t(f: #1 = t(f: bot)), #1>", th)
    r = restrict(s, 0)
    assert r.canonical() == "<bot, bot>"


def test_restrict_identity_when_shallow(th):
    s = parse_mrs("<t(f: #1 = t, g: #1), t>", th)
    assert mrs_variant(restrict(s, 2), s)
    assert mrs_variant(restrict(s, 5), s)


def test_restrict_keeps_sharing_among_kept_nodes(th):
    s = parse_mrs("<t(f: #1 = t(f: t), g: #1)>", th)
    assert restrict(s, 1).canonical() == "<t(f: #1 = bot, g: #1)>"


def test_restrict_collapses_spec_chain_heads(th):
    heads = [MultiRootedStructure.of(spec_chain(i)) for i in range(2, 12)]
    classes = {restrict(s, 1).canonical() for s in heads}
    assert classes == {"<t(f: bot)>"}


def test_restrict_generalizes():
    rng = random.Random(5)
    for _ in range(200):
        h = random_hierarchy(rng, 3)
        s = random_mrs(rng, h, rng.randint(1, 3), max_nodes=6, cyclic=rng.random() < 0.3)
        d = rng.randint(0, 3)
        assert morphism(restrict(s, d), s)
    with pytest.raises(ValueError):
        restrict(s, -1)
