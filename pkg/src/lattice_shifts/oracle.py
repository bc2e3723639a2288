"""Brute-force ground truth: ``B`` as a dense 0/1 matrix on a finite box.

Row ``u``, column ``v`` holds 1 iff ``v`` is a child of ``u``, so ``B f = M f``
for every ``f`` supported in the box. The matrix is built from
:meth:`GraphModel.children` alone and shares no code with the shift module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import shift
from .graph import DomainError, GraphModel, UnsupportedModelError
from .space import SparseVector, max_deviation

MAX_VERTICES = 20_000


@dataclass(frozen=True)
class TruncatedMatrix:
    model: GraphModel
    size: int
    vertices: list
    index: dict
    matrix: np.ndarray

    def __post_init__(self):
        # Column lists of each row; used for exact products over Fractions.
        rows = [np.flatnonzero(self.matrix[r]).tolist() for r in range(len(self.vertices))]
        object.__setattr__(self, "_rows", rows)

    @property
    def shape(self):
        return self.matrix.shape

    def is_nilpotent(self, max_power: int | None = None) -> bool:
        n = len(self.vertices)
        if n == 0:
            return True
        p = self.matrix.astype(bool)
        for _ in range(max_power if max_power is not None else n):
            p = (p.astype(np.int64) @ self.matrix.astype(np.int64)) > 0
            if not p.any():
                return True
        return False


def truncated_matrix(model: GraphModel, size: int) -> TruncatedMatrix:
    verts = model.truncate(size)
    if len(verts) > MAX_VERTICES:
        raise DomainError(f"box with {len(verts)} vertices exceeds the dense oracle cap {MAX_VERTICES}")
    index = {v: k for k, v in enumerate(verts)}
    mat = np.zeros((len(verts), len(verts)), dtype=np.uint8)
    for u in verts:
        for v in model.children(u):
            if v in index:
                mat[index[u], index[v]] = 1
    return TruncatedMatrix(model, size, verts, index, mat)


def matrix_power_apply(mat: TruncatedMatrix, vec: SparseVector, n: int) -> SparseVector:
    if vec.model != mat.model:
        raise DomainError(f"vector lives on {vec.model}, matrix on {mat.model}")
    outside = [v for v in vec.support() if v not in mat.index]
    if outside:
        raise DomainError(f"vector support {outside[:3]} escapes the truncation box")
    if n < 0:
        raise DomainError("power must be nonnegative")
    if vec.exact:
        x = [Fraction(0)] * len(mat.vertices)
        for v, val in vec.items():
            x[mat.index[v]] = val
        for _ in range(n):
            x = [sum((x[c] for c in cols), Fraction(0)) for cols in mat._rows]
    else:
        x = np.zeros(len(mat.vertices), dtype=complex)
        for v, val in vec.items():
            x[mat.index[v]] = val
        m = mat.matrix.astype(float)
        for _ in range(n):
            x = m @ x
    return SparseVector(mat.model, {mat.vertices[k]: val for k, val in enumerate(x) if val != 0}, validate=False)


def _support_extent(model: GraphModel, vec: SparseVector) -> int:
    size = 0
    while not all(model.in_box(v, size) for v in vec.support()):
        size += 1
    return size


def equivalence_check(model: GraphModel, vec: SparseVector, n: int, size: int | None = None):
    """Max deviation between the matrix oracle and the shift module's ``B^n``.

    The closed form is compared when the model has one, iteration otherwise.
    The box is enlarged by ``n`` so that no iterate touches its boundary.
    """
    if size is None:
        size = _support_extent(model, vec)
    mat = truncated_matrix(model, size + n)
    expected = matrix_power_apply(mat, vec, n)
    try:
        got = shift.power_closed(model, vec, n)
    except UnsupportedModelError:
        got = shift.power_apply(model, vec, n)
    return max_deviation(expected, got)
