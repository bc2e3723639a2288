import random
from fractions import Fraction

import pytest
import sympy

from lattice_shifts.criteria import Verdict
from lattice_shifts.graph import DomainError, Quadrant, SkipPath
from lattice_shifts.space import Constant, GeometricSum, SparseVector
from lattice_shifts.spectral import (
    EigenPair,
    eigen_residual,
    eigenvector_quadrant,
    eigenvector_skip,
    gs_region_scan,
    relative_residual,
    span_rank,
    truncated_norms,
)

F = Fraction


def test_quadrant_eigen_examples():
    pair = eigenvector_quadrant(1, F(1, 2), 3)
    assert pair.eigenvalue == 1
    assert all(x == F(1, 2) ** sum(v) for v, x in pair.vec.items())
    assert len(pair.vec.support()) == 10
    pair = eigenvector_quadrant(2, F(1, 8), 12)
    assert pair.vec[(1, 1)] == F(1, 8) and pair.eigenvalue == F(3, 4)
    # oracle: ratio (Bf)(v)/f(v) at an interior vertex, computed by hand
    bf = pair.vec[(2, 1)] + pair.vec[(1, 2)]
    assert bf / pair.vec[(1, 1)] == F(3, 4)
    with pytest.raises(DomainError):
        eigenvector_quadrant(1, 0, 3)
    with pytest.raises(DomainError):
        eigenvector_quadrant(F(1, 2), 1, 3)


def test_skip_eigen_examples():
    pair = eigenvector_skip(F(1, 2), 20)
    assert pair.eigenvalue == F(3, 4) and pair.vec[(20,)] == F(1, 2**20)
    assert eigenvector_skip(-1, 5).eigenvalue == 0
    assert eigenvector_skip(F(1, 3), 30).eigenvalue == F(4, 9)


def test_residual_examples():
    assert eigen_residual(Quadrant(), eigenvector_quadrant(1, F(1, 2), 10), 1) == 0
    assert eigen_residual(SkipPath(), eigenvector_skip(F(1, 2), 20), 2) == 0
    with pytest.raises(DomainError):
        eigen_residual(Quadrant(), eigenvector_quadrant(1, F(1, 2), 3), 5)
    with pytest.raises(DomainError):
        eigen_residual(SkipPath(), eigenvector_quadrant(1, F(1, 2), 3))


@pytest.mark.parametrize("seed", range(5))
def test_generic_vector_has_positive_residual(seed):
    rng = random.Random(seed)
    q = Quadrant()
    vec = SparseVector(q, {v: F(rng.randint(1, 50), rng.randint(1, 9)) for v in q.truncate(8)})
    pair = EigenPair(vec, F(rng.randint(1, 5)), 8, "quadrant")
    assert eigen_residual(q, pair) > 0


def test_rational_families_are_exact():
    rng = random.Random(11)
    for _ in range(20):
        r = F(rng.randint(4, 12), 4)
        s = F(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(2, 13))
        assert eigen_residual(Quadrant(), eigenvector_quadrant(r, s, 15)) == 0
    for _ in range(10):
        s = F(rng.randint(-9, 9) or 1, rng.randint(1, 7))
        assert eigen_residual(SkipPath(), eigenvector_skip(s, 30), 2) == 0


@pytest.mark.parametrize("r,s", [(1.0, 0.3 + 0.2j), (1.3, -0.25), (2.0, 0.05j), (1.1, 0.4)])
def test_float_residual_is_tiny(r, s):
    assert relative_residual(Quadrant(), eigenvector_quadrant(r, s, 15)) <= 1e-12
    assert relative_residual(SkipPath(), eigenvector_skip(s, 30), 2) <= 1e-12


def test_weighted_residual():
    pair = eigenvector_quadrant(F(3, 2), F(1, 5), 8)
    assert eigen_residual(Quadrant(), pair, 1, GeometricSum(2)) == 0


def test_gs_scan_examples():
    r_grid = [1.05]
    s_grid = [0.5 / 1.05**2, 0.95 / 1.05**2, 0.3, 0.7]
    rep = gs_region_scan(Constant(1), r_grid, s_grid, 40)
    assert rep.q_hat == 1 and rep.sub_unit and rep.super_unit
    assert rep.verdict is Verdict.MIXING
    grid_s = [k / 40 for k in range(1, 60)]
    rep = gs_region_scan(GeometricSum(2), [1.0, 1.5, 2.0, 3.0], grid_s, 40)
    assert not rep.super_unit and rep.verdict is Verdict.INCONCLUSIVE
    # oracle: membership 2 r^2 |s| < 1 forces |lambda| = |s| (r^2 + r) < (1 + 1/r)/2 <= 1
    for row in rep.rows:
        if row.in_norm:
            assert row.abs_lambda < (1 + 1 / row.r) / 2 + 1e-12
    empty = gs_region_scan(Constant(1), [], [0.5], 10)
    assert empty.rows == [] and empty.to_json()["points"] == 0


def test_gs_scan_csv():
    rep = gs_region_scan(Constant(1), [1.0], [0.25, 0.75], 10)
    lines = rep.to_csv().splitlines()
    assert lines[0] == "r,s_re,s_im,in_norm,abs_lambda,region"
    assert [line.split(",")[-1] for line in lines[1:]] == ["sub-unit", "super-unit"]


def _generic_points(count):
    # f_{r,s}(i,j) = (rs)^i (r^2 s)^j, so each point needs its own r and s
    return [(1 + F(t, 7), F(1, 3) + F(t * t, 11)) for t in range(count)]


@pytest.mark.parametrize("size", [1, 2, 3])
def test_eigenvectors_span_the_box(size):
    dim = (size + 1) * (size + 2) // 2
    pts = _generic_points(dim)
    assert span_rank(pts, size) == dim
    # independent oracle: sympy rank of the same matrix
    verts = Quadrant().truncate(size)
    rows = [[sympy.Rational(r.numerator, r.denominator) ** (i + 2 * j) * sympy.Rational(s.numerator, s.denominator) ** (i + j) for i, j in verts] for r, s in pts]
    assert sympy.Matrix(rows).rank() == dim


def test_span_rank_detects_dependence():
    # repeated points cannot span more than the number of distinct points
    pts = [(F(1), F(1, 2))] * 3 + [(F(2), F(1, 5))]
    assert span_rank(pts, 2) == 2


def test_norm_membership():
    w = GeometricSum(2)
    inside = eigenvector_quadrant(F(6, 5), F(1, 5), 40)  # 2 * 1.44 * 0.2 = 0.576 < 1
    norms = truncated_norms(inside, w, 2, [10, 20, 30, 40])
    assert norms == sorted(norms)
    assert norms[-1] - norms[-2] < 1e-6 * norms[-1]
    outside = eigenvector_quadrant(F(6, 5), F(1, 2), 40)  # 2 * 1.44 * 0.5 = 1.44 > 1
    grow = truncated_norms(outside, w, 2, [10, 20, 30, 40])
    assert grow[-1] > 100 * grow[0]
