"""
Mixing and obstruction on the quadrant
======================================

Weights growing slower than 2^(i+j) leave room for eigenvectors on both
sides of the unit circle, and the shift is mixing. Weights at least
c 2^(i+j) block hypercyclicity. In between the finite scan stays silent.
"""

from fractions import Fraction

import numpy as np

from lattice_shifts import Constant, GeometricSum, Quadrant
from lattice_shifts.criteria import necessary_sum, quadrant_mixing_test, quadrant_obstruction_test
from lattice_shifts.spectral import eigen_residual, eigenvector_quadrant, gs_region_scan

for beta in (Fraction(1), Fraction(3, 2), Fraction(19, 10), Fraction(2), Fraction(5, 2)):
    w = GeometricSum(beta)
    mix = quadrant_mixing_test(w, 60)
    obs = quadrant_obstruction_test(w, 60)
    print(f"beta={str(beta):5s}  q_hat={mix.evidence['q_hat']:.3f}  {mix.verdict}  /  {obs.verdict}")

# f_{r,s}(i,j) = r^(i+2j) s^(i+j) is an eigenvector with eigenvalue s(r^2+r)
pair = eigenvector_quadrant(2, Fraction(1, 8), 15)
print("eigenvalue", pair.eigenvalue, "residual", eigen_residual(Quadrant(), pair))

# Which eigenvectors live in the space? Scan a grid in (r, s).
r_grid = np.linspace(1.0, 1.5, 6)
s_grid = np.linspace(0.05, 0.95, 19)
for w in (Constant(1), GeometricSum(2)):
    rep = gs_region_scan(w, r_grid, s_grid, 40)
    print(type(w).__name__, rep.to_json())

# The necessary sum stays bounded for the critical weight 2^(i+j)
for n in (5, 10, 20, 40):
    print(n, float(necessary_sum(GeometricSum(2), 2, n)))
