"""Octave arithmetic over the integral basis and the E8 shells.

Run: python3 demos/01_octaves_and_e8.py
"""
import numpy as np

from octavic.octonion import GRAM_S, IntegralOctave, Octave, enumerate_by_norm, f_basis

e = [Octave.basis(i) for i in range(8)]
print("e1 e2 =", e[1] * e[2], "   e2 e1 =", e[2] * e[1])

# associativity fails, alternativity holds
a, b, c = e[1], e[2], e[3]
print("(e1 e2) e3 =", (a * b) * c, "   e1 (e2 e3) =", a * (b * c))

f = f_basis()
print("f4^2 =", f[4] * f[4], " trace", (f[4] * f[4]).trace())
print("f5 has trace", f[5].trace())

x = IntegralOctave([1, -2, 0, 3, 1, 0, -1, 2])
y = IntegralOctave([0, 1, 1, -1, 2, 0, 0, 1])
print(f"N(x) = {x.norm()}, N(y) = {y.norm()}, N(xy) = {(x * y).norm()}")

print("Gram matrix S = 2FF':")
print(GRAM_S)
print("det S =", round(np.linalg.det(GRAM_S)), " diagonal", np.diag(GRAM_S).tolist())

# the norm form is the E8 form: 240 roots, 2160 vectors of norm 2, ...
for n in range(1, 5):
    print(f"vectors of norm {n}: {len(enumerate_by_norm(n))}")
