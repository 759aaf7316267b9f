"""Unification, subsumption and the strictness witnesses on small AVMs.

Run:  python demos/unification.py
"""

from tfsgram import Inconsistent, load_hierarchy, parse_avm, strictness_witness, subsumes, unify, validate
from tfsgram.grammar import bundled_path

h = load_hierarchy(bundled_path("diamond.types").read_text())

a = parse_avm("a(f: #1 = bot, g: #1)", h)
b = parse_avm("b(f: a)", h)
u = unify(a, b)
print("A      ", a.canonical())
print("B      ", b.canonical())
print("A ⊔ B  ", u.canonical())
print("A ⊑ U:", bool(subsumes(a, u)), " B ⊑ U:", bool(subsumes(b, u)))
print("why A ⊏ U:", strictness_witness(a, u))
print("why B ⊏ U:", strictness_witness(b, u))

m = subsumes(u, a)
print("U ⊑ A?", bool(m), "-", m)

# every pair of diamond types has a lub; a flat hierarchy has clashes
flat = validate({"x": [], "y": []})
try:
    unify(parse_avm("x(f: x)", flat), parse_avm("x(f: y(g: bot))", flat))
except Inconsistent as exc:
    print("clash:", exc)
