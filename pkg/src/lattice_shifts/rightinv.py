"""Right inverses ``R_n`` of ``B^n`` on finitely supported vectors.

On strips the inverse is built layer by layer: ``R_n e_{i,j}`` starts at
``e_{i,j+n}`` and subtracts the already-built inverses of the lower layers
that ``B^n e_{i,j+n}`` spills into. The result is
``R_n e_{i,j} = sum_{s<=i} alpha_{i,s} e_{s, i+j-s+n}`` with a ``j``-free table
``alpha``.

On the quadrant each anti-diagonal ``i + j = k`` is expanded in the
geometric basis ``f_a^k = sum_j a^j e_{k-j, j}``; since
``B f_a^k = (1 + a) f_a^{k-1}``, setting
``R_n f_a^k = (1 + a)^{-n} f_a^{k+n}`` inverts ``B^n``.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import _linalg
from .graph import DomainError, GraphModel, Quadrant, Strip, UnsupportedModelError, HalfPlane
from .space import SparseVector, to_scalar

FLOAT_VANDERMONDE_WARN = 15


@dataclass(frozen=True)
class AlphaTable:
    m: int
    n: int
    entries: dict

    def __getitem__(self, key):
        return self.entries[key]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "s", "numerator", "denominator"])
        for (i, s), a in sorted(self.entries.items()):
            w.writerow([i, s, a.numerator, a.denominator])
        return buf.getvalue()


@lru_cache(maxsize=256)
def _alpha_rows(m: int, n: int) -> tuple:
    rows: list[dict[int, Fraction]] = [{}]
    for i in range(1, m + 1):
        row = {i: Fraction(1)}
        for l in range(1, i):
            c = comb(n, l)
            for s, a in rows[i - l].items():
                row[s] = row.get(s, 0) - c * a
        rows.append(row)
    return tuple(rows)


def alpha_table(m: int, n: int) -> AlphaTable:
    if m < 1 or n < 1:
        raise DomainError("alpha_table needs m >= 1 and n >= 1")
    rows = _alpha_rows(m, n)
    entries = {(i, s): a for i in range(1, m + 1) for s, a in rows[i].items()}
    return AlphaTable(m, n, entries)


def right_inverse_strip(vec: SparseVector, n: int) -> SparseVector:
    model = vec.model
    if not isinstance(model, Strip):
        raise DomainError(f"right_inverse_strip needs a strip model, got {model}")
    if n < 1:
        raise DomainError("power must be positive")
    rows = _alpha_rows(model.m, n)
    out: dict = {}
    for (i, j), x in vec.items():
        for s, a in rows[i].items():
            u = (s, i + j - s + n)
            out[u] = out.get(u, 0) + a * x
    return SparseVector(model, out, validate=False)


@dataclass(frozen=True)
class DiagonalBasisParams:
    """Pairwise distinct nonzero parameters ``a_0, a_1, ...``; diagonal ``k`` uses the first ``k + 1``."""

    values: tuple

    def __post_init__(self):
        vals = tuple(to_scalar(a) for a in self.values)
        if any(a == 0 for a in vals):
            raise DomainError("diagonal basis parameters must be nonzero")
        if len(set(vals)) != len(vals):
            raise DomainError("diagonal basis parameters must be pairwise distinct")
        if any(a == -1 for a in vals):
            raise DomainError("a = -1 makes (1 + a)^-n undefined")
        object.__setattr__(self, "values", vals)

    @property
    def exact(self):
        return all(isinstance(a, Fraction) for a in self.values)

    def __len__(self):
        return len(self.values)

    @classmethod
    def default(cls, top_diagonal: int) -> DiagonalBasisParams:
        """``a_i = 1/2 + i/(2K + 3)`` for ``i = 0..K``, all inside ``(1/2, 1)``."""
        big_k = top_diagonal
        return cls(tuple(Fraction(1, 2) + Fraction(i, 2 * big_k + 3) for i in range(big_k + 1)))


def geometric_diagonal(model: GraphModel, a, k: int, coeff=1) -> SparseVector:
    """``coeff * sum_{j=0}^{k} a^j e_{k-j, j}`` on the quadrant."""
    a = to_scalar(a)
    return SparseVector(model, {(k - j, j): coeff * a**j for j in range(k + 1)}, validate=False)


def decompose_diagonal(values: Sequence, params: DiagonalBasisParams):
    """Coefficients ``c`` with ``sum_i c_i a_i^j = values[j]`` for ``j = 0..k``."""
    k = len(values) - 1
    if len(params) < k + 1:
        raise DomainError(f"diagonal {k} needs {k + 1} parameters, only {len(params)} given")
    a = params.values[: k + 1]
    exact = params.exact and all(isinstance(x, Fraction) for x in values)
    if exact:
        mat = [[ai**j for ai in a] for j in range(k + 1)]
        return _linalg.solve(mat, values)
    if k + 1 > FLOAT_VANDERMONDE_WARN:
        warnings.warn(f"floating Vandermonde solve with {k + 1} parameters is ill-conditioned", stacklevel=3)
    mat = np.vander(np.array([complex(x) for x in a]), k + 1, increasing=True).T
    return list(np.linalg.solve(mat, np.array([complex(x) for x in values])))


def right_inverse_quadrant(vec: SparseVector, n: int, params: DiagonalBasisParams | None = None) -> SparseVector:
    model = vec.model
    if not isinstance(model, Quadrant) or isinstance(model, HalfPlane):
        raise DomainError(f"right_inverse_quadrant needs the quadrant, got {model}")
    if n < 0:
        raise DomainError("power must be nonnegative")
    diagonals: dict[int, dict[int, object]] = {}
    for (i, j), x in vec.items():
        diagonals.setdefault(i + j, {})[j] = x
    if not diagonals:
        return vec
    if params is None:
        params = DiagonalBasisParams.default(max(diagonals))
    out = SparseVector(model, {}) if vec.exact else SparseVector(model, {}).to_float()
    for k, entries in sorted(diagonals.items()):
        zero = Fraction(0) if vec.exact else 0j
        values = [entries.get(j, zero) for j in range(k + 1)]
        coeffs = decompose_diagonal(values, params)
        for a, c in zip(params.values, coeffs):
            if c == 0:
                continue
            if not vec.exact:
                a, c = complex(a), complex(c)
            out = out + geometric_diagonal(model, a, k + n, c / (1 + a) ** n)
    return out


def hc_approximant(model: GraphModel, schedule, params: DiagonalBasisParams | None = None) -> SparseVector:
    """``f = sum_k R_{n_k} g_k`` for a schedule of ``(n_k, g_k)`` with increasing ``n_k``."""
    powers = [n for n, _ in schedule]
    if any(b <= a for a, b in zip(powers, powers[1:])):
        raise DomainError("schedule powers must be strictly increasing")
    if isinstance(model, Strip):
        inv = lambda g, n: right_inverse_strip(g, n)
    elif isinstance(model, Quadrant) and not isinstance(model, HalfPlane):
        inv = lambda g, n: right_inverse_quadrant(g, n, params)
    else:
        raise UnsupportedModelError(f"no right inverse implemented on {model}")
    total = SparseVector(model, {})
    for n, g in schedule:
        if g.model != model:
            raise DomainError(f"target vector lives on {g.model}, not on {model}")
        part = inv(g, n)
        if total.exact != part.exact:
            total, part = total.to_float(), part.to_float()
        total = total + part
    return total
