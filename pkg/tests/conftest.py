from fractions import Fraction

import pytest
from hypothesis import strategies as st

from lattice_shifts.graph import BilateralStrip, HalfPlane, PathCycle, Quadrant, SkipPath, Strip
from lattice_shifts.space import SparseVector

SMALL_MODELS = [Strip(1), Strip(3), Strip(5), BilateralStrip(2), Quadrant(), HalfPlane(), PathCycle(), SkipPath()]

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def sparse_vectors(model, size=6, max_terms=6):
    verts = model.truncate(size)
    return st.dictionaries(st.sampled_from(verts), fractions, max_size=max_terms).map(
        lambda d: SparseVector(model, d)
    )


def path_power(model, vec, n):
    """Independent oracle: (B^n f)(v) = sum of f over endpoints of all length-n child paths from v.

    Only vertices that can reach the support are visited; candidates are
    collected by walking children from a finite pool.
    """
    support = dict(vec.items())
    out = {}
    for v in _candidates(model, vec, n):
        total = Fraction(0)
        stack = [(v, 0)]
        while stack:
            w, depth = stack.pop()
            if depth == n:
                total += support.get(w, 0)
                continue
            for u in model.children(w):
                stack.append((u, depth + 1))
        if total:
            out[v] = total
    return SparseVector(model, out)


def _candidates(model, vec, n):
    # any v with a length-n path into the support lies within n "steps back";
    # sweep a generous box around the support.
    size = 0
    while not all(model.in_box(v, size) for v in vec.support()):
        size += 1
    return model.truncate(size + n + 2)


@pytest.fixture
def half():
    return Fraction(1, 2)
