"""A grammar the parser only finishes thanks to the subsumption filter.

The single rule derives the lexical entry from every t(f: ... t(f: bot)),
so an unfiltered chart keeps growing until the item cap.  With the filter
the most general item over the span absorbs all later ones.

Run:  python demos/offline_parsability.py
"""

from tfsgram import MultiRootedStructure, bundled_grammar, parse, restrict, spec_chain

g = bundled_grammar("olp.tfg")

for flt in (True, False):
    res = parse(g, "w1", subsumption_filter=flt, max_items=1000)
    c = res.counters
    print("filter=%-5s verdict=%-14s retained=%d pruned=%d" % (flt, res.verdict.value, c.retained, c.pruned))

# truncating at depth 1 cannot tell the chain heads apart
heads = [MultiRootedStructure.of(spec_chain(i)) for i in range(1, 11)]
print("distinct heads:", len({h.canonical() for h in heads}))
print("distinct after restrict(., 1):", len({restrict(h, 1).canonical() for h in heads}))
