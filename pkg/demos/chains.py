"""The two infinite chains: one strictly decreasing (cyclic), one increasing.

With cycles allowed, A_0 ⊐ A_1 ⊐ A_2 ⊐ ... never bottoms out, so
subsumption is not well founded.  Without cycles the rank of a structure
bounds the length of any decreasing chain; the specification chain B_i
shows ranks growing along strict subsumption.

Run:  python demos/chains.py [n]
"""

import sys

from tfsgram import cyclic_chain, is_cyclic, rank, spec_chain, strictly_subsumes

n = int(sys.argv[1]) if len(sys.argv) > 1 else 6

print("cyclic chain")
for i in range(n):
    a, b = cyclic_chain(i), cyclic_chain(i + 1)
    print("  A_%d %s  cyclic=%s  A_%d ⊐ A_%d: %s" % (i, a.canonical(), is_cyclic(a), i, i + 1, strictly_subsumes(b, a)))

print("specification chain")
for i in range(n):
    a, b = spec_chain(i), spec_chain(i + 1)
    print("  B_%d rank %-3d %s  strict: %s" % (i, rank(a), a.canonical(), strictly_subsumes(a, b)))
