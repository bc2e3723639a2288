import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lattice_shifts.graph import BilateralStrip, DiamondChain, DomainError, HalfPlane, PathCycle, Quadrant, SkipPath, Strip
from lattice_shifts.oracle import MAX_VERTICES, equivalence_check, matrix_power_apply, truncated_matrix
from lattice_shifts.shift import power_apply
from lattice_shifts.space import SparseVector

from conftest import sparse_vectors

F = Fraction
e = SparseVector.basis


def test_matrix_examples():
    m = truncated_matrix(Strip(1), 3)
    assert np.array_equal(m.matrix, np.eye(3, k=1, dtype=np.uint8))
    q = truncated_matrix(Quadrant(), 1)
    row = q.matrix[q.index[(0, 0)]]
    assert {q.vertices[c] for c in np.flatnonzero(row)} == {(0, 1), (1, 0)}
    pc = truncated_matrix(PathCycle(), 3)
    row = pc.matrix[pc.index[(2,)]]
    assert {pc.vertices[c] for c in np.flatnonzero(row)} == {(1,), (3,)}


@pytest.mark.parametrize("model", [Strip(3), BilateralStrip(2), Quadrant(), HalfPlane(), PathCycle(), SkipPath(), DiamondChain()], ids=str)
def test_matrix_matches_children(model):
    m = truncated_matrix(model, 5)
    for u in m.vertices:
        cols = {m.vertices[c] for c in np.flatnonzero(m.matrix[m.index[u]])}
        assert cols == {v for v in model.children(u) if v in m.index}


@pytest.mark.parametrize("model", [Strip(3), Quadrant(), HalfPlane(), SkipPath(), DiamondChain(), BilateralStrip(2)], ids=str)
def test_acyclic_models_are_nilpotent(model):
    assert truncated_matrix(model, 5).is_nilpotent()


def test_pathcycle_is_not_nilpotent():
    assert not truncated_matrix(PathCycle(), 5).is_nilpotent()


def test_matrix_power_examples():
    s1 = Strip(1)
    m = truncated_matrix(s1, 5)
    v = e(s1, (1, 3))
    assert matrix_power_apply(m, v, 0) == v
    assert matrix_power_apply(m, v, 2) == e(s1, (1, 1))
    q = Quadrant()
    assert matrix_power_apply(truncated_matrix(q, 4), e(q, (1, 1)), 2) == e(q, (0, 0), 2)


def test_float_path():
    q = Quadrant()
    v = SparseVector(q, {(2, 1): 0.5, (1, 1): 1.5})
    got = matrix_power_apply(truncated_matrix(q, 4), v, 2)
    want = power_apply(q, v, 2)
    assert max(abs(got[u] - want[u]) for u in q.truncate(4)) < 1e-12


def test_escape_and_cap():
    s1 = Strip(1)
    with pytest.raises(DomainError):
        matrix_power_apply(truncated_matrix(s1, 2), e(s1, (1, 5)), 1)
    with pytest.raises(DomainError):
        truncated_matrix(Strip(5), MAX_VERTICES)


def test_equivalence_examples():
    q = Quadrant()
    assert equivalence_check(q, e(q, (5, 5)), 10, 12) == 0
    assert power_apply(q, e(q, (5, 5)), 10) == e(q, (0, 0), 252)
    rng = random.Random(5)
    s3 = Strip(3)
    vec = SparseVector(s3, {rng.choice(s3.truncate(6)): F(rng.randint(-9, 9)) for _ in range(5)})
    assert equivalence_check(s3, vec, 7) == 0
    pc = PathCycle()
    vec = SparseVector(pc, {(k,): F(k) for k in range(1, 8)})
    assert equivalence_check(pc, vec, 6) == 0
    assert equivalence_check(DiamondChain(), e(DiamondChain(), (3, 3)), 4) == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_equivalence_random(data):
    model = data.draw(st.sampled_from([Strip(2), Strip(4), BilateralStrip(2), Quadrant(), HalfPlane(), PathCycle(), SkipPath()]))
    vec = data.draw(sparse_vectors(model, size=5, max_terms=6))
    n = data.draw(st.integers(0, 8))
    assert equivalence_check(model, vec, n) == 0
