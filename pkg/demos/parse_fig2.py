"""Parse two sentences with the bundled toy grammar and show the goal item.

Run:  python demos/parse_fig2.py
"""

from tfsgram import bundled_grammar, parse, project

g = bundled_grammar("fig2.tfg")

for sentence in ("john loves her", "her loves john"):
    res = parse(g, sentence, trace=True)
    print("%-16s %s" % (sentence, res.verdict.value))
    for y in res.goals:
        print("    head:", project(y.sigma, 1).canonical())
    c = res.counters
    print("    %d items generated, %d retained, %d failed unifications" % (c.generated, c.retained, c.failed))

# the trace lists each retained item as [i, sigma, j, k]
res = parse(g, "john loves her", trace=True)
print("\nfirst items of the chart:")
for rec in res.trace[:6]:
    print("   ", rec["i"], rec["j"], rec["k"], rec["rule"])
