"""
Right inverses and the approximating vector
============================================

To show that a shift is hypercyclic one builds maps R_n with B^n R_n = I on
finite vectors. On a strip these are explicit. The coefficient table turns
out to be the series of (1 + x)^(-n), so its entries grow like n^(i-s).
"""

from fractions import Fraction

from lattice_shifts import GeometricJ, Strip, SparseVector
from lattice_shifts.rightinv import alpha_table, hc_approximant, right_inverse_strip
from lattice_shifts.shift import power_closed
from lattice_shifts.space import norm_pow

print(alpha_table(3, 4).to_csv())

s3 = Strip(3)
e31 = SparseVector.basis(s3, (3, 1))
r = right_inverse_strip(e31, 4)
print("R_4 e_{3,1} =", dict(r.items()))
print("B^4 R_4 e_{3,1} == e_{3,1}:", power_closed(s3, r, 4) == e31)

# growth of the corner coefficient, normalized by n^(i-s)
for n in (10, 50, 200):
    a = alpha_table(5, n)[5, 1]
    print(f"n={n:3d}  alpha_(5,1)={a}  ratio={float(abs(a) / Fraction(n) ** 4):.5f}")

# Assemble f = sum_k R_{n_k} g and watch B^{n_k} f approach g in l^2(mu)
s2 = Strip(2)
mu = GeometricJ(Fraction(1, 2))
g = SparseVector(s2, {(2, j): 1 for j in range(1, 6)})
powers = (10, 25, 45)
f = hc_approximant(s2, [(n, g) for n in powers])
for n in powers:
    err = norm_pow(power_closed(s2, f, n) - g, mu, 2)
    print(f"n_k={n}  ||B^n f - g|| = {float(err) ** 0.5:.3e}")
