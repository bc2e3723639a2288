"""
Powers of the backward shift on lattice graphs
==============================================

The backward shift sums a function over the children of each vertex.
On a strip of height m every vertex (i, j) has children (i, j+1) and,
below the top row, (i+1, j). Iterating n times spreads a basis vector
along a binomial fan, which the closed form writes down directly.
"""

from fractions import Fraction

from lattice_shifts import PathCycle, Quadrant, SparseVector, Strip
from lattice_shifts.oracle import matrix_power_apply, truncated_matrix
from lattice_shifts.shift import power_apply, power_closed

strip = Strip(3)
e33 = SparseVector.basis(strip, (3, 3))

# Two steps back from the top corner: three vertices, binomial weights 1, 2, 1
print("B^2 e_{3,3} =", {v: str(x) for v, x in power_closed(strip, e33, 2).items()})

# The closed form, the iterated shift and a dense matrix all agree
mat = truncated_matrix(strip, 12)
for n in range(0, 6):
    a = power_closed(strip, e33, n)
    b = power_apply(strip, e33, n)
    c = matrix_power_apply(mat, e33, n)
    print(f"n={n}  terms={len(a):2d}  agree={a == b == c}")

# On the quadrant the mass of B^n e_{i,j} is 2^n as long as the fan fits
q = Quadrant()
for n in range(0, 8):
    out = power_closed(q, SparseVector.basis(q, (7, 7)), n)
    print(f"n={n}  total mass={sum(out.data.values())}")

# The path with a 2-cycle at its root is not nilpotent. Odd and even
# powers collect different parities into the two root vertices.
pc = PathCycle()
f = SparseVector(pc, {(k,): Fraction(10) ** k for k in range(1, 7)})
for n in (3, 4):
    print(f"B^{n} f on the cycle path:", {v[0]: str(x) for v, x in sorted(power_closed(pc, f, n).items())})
