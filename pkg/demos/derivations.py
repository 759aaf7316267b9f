"""Check parser verdicts against the bounded derivation search.

The search rewrites the start symbol top-down and reports YES, NO (the
space was exhausted) or UNKNOWN (the depth bound was hit).  The parser
must agree whenever the answer is definite.  The toy grammar gives verbs
and verb phrases the same CAT, so "john loves" is a sentence too.

Run:  python demos/derivations.py
"""

import itertools

from tfsgram import Answer, bundled_grammar, in_language_bounded, parse

g = bundled_grammar("fig2.tfg")
words = sorted(g.lexicon)

agree = total = 0
for n in range(1, 4):
    for s in itertools.product(words, repeat=n):
        oracle = in_language_bounded(g, s, 4)
        verdict = parse(g, s).verdict
        if oracle is not Answer.UNKNOWN:
            total += 1
            agree += (oracle is Answer.YES) == (verdict.value == "accept")
        if oracle is Answer.YES:
            print("in the language:", " ".join(s))
print("parser and search agree on %d/%d definite cases" % (agree, total))
