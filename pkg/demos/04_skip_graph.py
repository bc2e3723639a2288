"""
The skip path and the golden ratio
==================================

Each vertex n of the skip path has children n+1 and n+2, so the shift acts
like B0 (I + B0). Geometric weights q^n give mixing below the golden ratio
and an obstruction at it.
"""

from fractions import Fraction

from lattice_shifts import Rule
from lattice_shifts.criteria import GOLDEN, skip_graph_test
from lattice_shifts.graph import SkipPath
from lattice_shifts.spectral import eigen_residual, eigenvector_skip

for q in (1.0, 1.3, 1.5, 1.6, GOLDEN, 1.8):
    w = Rule(lambda v, q=q: q ** v[0], exact_values=False)
    rep = skip_graph_test(w, 60)
    print(f"q={q:.4f}  q_hat={rep.evidence['q_hat']:.4f}  {rep.verdict}")

pair = eigenvector_skip(Fraction(1, 3), 30)
print("s=1/3: eigenvalue", pair.eigenvalue, "residual", eigen_residual(SkipPath(), pair, 2))
