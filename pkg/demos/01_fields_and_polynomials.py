"""Exact fields and polynomial factorization.

Builds GF(4) with its canonical modulus, factors a few polynomials over
finite fields and the rationals, and shows the separability test that
gates the whole decomposition pipeline.
"""

from invlat import QQ, factor, gf_build, is_separable, parse_poly

F2 = gf_build(2)
F4 = gf_build(2, 2)
print("GF(2):", F2)
print("GF(4):", F4, "- the modulus is the least monic irreducible quadratic")

a = F4.generator()
print("generator a satisfies a^2 =", a * a, " (= a+1, since a^2+a+1 = 0)")

print()
f = parse_poly("x^2+x+1", F2) ** 3
print("factor((x^2+x+1)^3) over GF(2):", [(str(p), m) for p, m in factor(f)])

g = parse_poly("x^2-x", gf_build(3))
print("factor(x^2-x) over GF(3):   ", [(str(p), m) for p, m in factor(g)])

h = parse_poly("x^4+2x^2+1", QQ)  # = (x^2+1)^2
print("factor((x^2+1)^2) over Q:   ", [(str(p), m) for p, m in factor(h)])

print()
for text, field in (("x^2+x+1", F2), ("x^2", F2), ("x^2+1", QQ)):
    p = parse_poly(text, field)
    print(f"is_separable({text}) over {field}: {is_separable(p)}")
