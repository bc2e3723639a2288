"""Truncated eigenvector families of the backward shift and their residuals.

On the quadrant, ``f_{r,s}(v_{i,j}) = r^{i+2j} s^{i+j}`` satisfies
``B f_{r,s} = s (r^2 + r) f_{r,s}``; on the skip-edge path, ``f_s = (s^n)_n``
satisfies ``B f_s = s (1 + s) f_s``. Vectors are stored cut off at a finite
level, so the identity is checked only at interior vertices whose children
all survive the cut.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg
from .criteria import DEFAULT_MARGIN, Verdict, quadrant_mixing_test
from .graph import DomainError, GraphModel, Quadrant, SkipPath
from .shift import apply
from .space import Lp, SparseVector, WeightFamily, norm, to_scalar


@dataclass(frozen=True)
class EigenPair:
    vec: SparseVector
    eigenvalue: object
    extent: int
    family: str
    params: tuple = ()


def _exact_or_complex(*xs):
    xs = [to_scalar(x) for x in xs]
    if all(isinstance(x, Fraction) for x in xs):
        return xs
    return [complex(x) for x in xs]


def eigenvector_quadrant(r, s, extent: int) -> EigenPair:
    r, s = _exact_or_complex(r, s)
    if isinstance(r, complex) and (r.imag != 0 or r.real < 1) or isinstance(r, Fraction) and r < 1:
        raise DomainError("r must be a real number >= 1")
    if s == 0:
        raise DomainError("s = 0 gives the trivial kernel vector e_{0,0}, not an eigen-candidate")
    data = {(i, d - i): r ** (i + 2 * (d - i)) * s**d for d in range(extent + 1) for i in range(d + 1)}
    vec = SparseVector(Quadrant(), data, validate=False)
    return EigenPair(vec, s * (r * r + r), extent, "quadrant", (r, s))


def eigenvector_skip(s, extent: int) -> EigenPair:
    (s,) = _exact_or_complex(s)
    vec = SparseVector(SkipPath(), {(n,): s**n for n in range(1, extent + 1)}, validate=False)
    return EigenPair(vec, s * (1 + s), extent, "skip", (s,))


def interior_vertices(model: GraphModel, extent: int, margin: int):
    if margin < 1:
        raise DomainError("interior margin must be at least 1")
    if margin > extent:
        raise DomainError(f"margin {margin} exceeds the truncation extent {extent}")
    return [v for v in model.truncate(extent - margin) if all(model.in_box(u, extent) for u in model.children(v))]


def eigen_residual(model: GraphModel, pair: EigenPair, margin: int = 1, weight: WeightFamily | None = None):
    """``max |(B f)(v) - lambda f(v)| (* |mu_v|)`` over interior vertices.

    Exact (a Fraction) for exact pairs and weights, a float otherwise.
    """
    if pair.vec.model != model:
        raise DomainError(f"eigenvector lives on {pair.vec.model}, not on {model}")
    bf = apply(model, pair.vec)
    lam = pair.eigenvalue
    worst = Fraction(0) if pair.vec.exact else 0.0
    for v in interior_vertices(model, pair.extent, margin):
        d = abs(bf[v] - lam * pair.vec[v])
        if weight is not None:
            w = weight(v)
            d = d * abs(w) if isinstance(d, Fraction) and isinstance(w, Fraction) else float(d) * abs(complex(w))
        worst = max(worst, d)
    return worst


def relative_residual(model: GraphModel, pair: EigenPair, margin: int = 1) -> float:
    """Residual divided by ``max |lambda f(v)|`` over the same interior."""
    scale = max((abs(pair.eigenvalue * pair.vec[v]) for v in interior_vertices(model, pair.extent, margin)), default=0)
    res = eigen_residual(model, pair, margin)
    return float(res) / float(scale) if scale else float(res)


def span_rank(points, size: int) -> int:
    """Rank of the truncations of ``f_{r,s}`` to the box ``i + j <= size``, exact for rational points."""
    rows = [[eigenvector_quadrant(r, s, size).vec[v] for v in Quadrant().truncate(size)] for r, s in points]
    return _linalg.rank(rows)


@dataclass
class RegionRow:
    r: float
    s: complex
    in_norm: bool
    abs_lambda: float
    tag: str


@dataclass
class RegionReport:
    q_hat: float | None
    rows: list = field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE

    @property
    def sub_unit(self):
        return [row for row in self.rows if row.tag == "sub-unit"]

    @property
    def super_unit(self):
        return [row for row in self.rows if row.tag == "super-unit"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "s_re", "s_im", "in_norm", "abs_lambda", "region"])
        for row in self.rows:
            w.writerow([repr(row.r), repr(row.s.real), repr(row.s.imag), int(row.in_norm), repr(row.abs_lambda), row.tag])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "criterion": "gs-scan",
            "verdict": self.verdict.value,
            "q_hat": self.q_hat,
            "points": len(self.rows),
            "sub_unit": len(self.sub_unit),
            "super_unit": len(self.super_unit),
        }


def gs_region_scan(family: WeightFamily, r_grid, s_grid, extent: int, margin: float = DEFAULT_MARGIN) -> RegionReport:
    """Classify grid points ``(r, s)`` by membership ``q_hat r^2 |s| < 1`` and by ``|lambda| = |s| (r^2 + r)``.

    Mixing evidence requires eigenvectors in the space on both sides of the
    unit circle.
    """
    r_grid, s_grid = list(r_grid), list(s_grid)
    if not r_grid or not s_grid:
        return RegionReport(None)
    q_hat = quadrant_mixing_test(family, extent, margin).evidence["q_hat"]
    rows = []
    for r in r_grid:
        r = float(r)
        for s in s_grid:
            s = complex(s)
            in_norm = q_hat * r * r * abs(s) < 1
            lam = abs(s) * (r * r + r)
            if not in_norm:
                tag = "outside"
            elif lam < 1:
                tag = "sub-unit"
            elif lam > 1:
                tag = "super-unit"
            else:
                tag = "unit"
            rows.append(RegionRow(r, s, in_norm, lam, tag))
    report = RegionReport(q_hat, rows)
    if report.sub_unit and report.super_unit:
        report.verdict = Verdict.MIXING
    return report


def truncated_norms(pair: EigenPair, weight: WeightFamily, p: int, extents):
    """``l^p(mu)`` norms of ``pair.vec`` cut at each level in ``extents`` (membership evidence)."""
    out = []
    for d in extents:
        cut = SparseVector(pair.vec.model, {v: x for v, x in pair.vec.items() if sum(v) <= d}, validate=False)
        out.append(float(norm(cut, weight, Lp(p))))
    return out
