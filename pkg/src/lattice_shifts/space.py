"""Finitely supported vectors, weights and the weighted sequence-space norms.

Scalars are either exact (:class:`fractions.Fraction`, ints are promoted) or
complex floating point. A single vector never mixes the two kinds.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Complex, Rational
from types import MappingProxyType
from typing import Callable, Iterable, Mapping

from .graph import DomainError, GraphModel, Vertex, model_from_json, vertex_from_json, vertex_to_json

Scalar = Fraction | complex


def to_scalar(x) -> Scalar:
    """Normalize a number: rationals become ``Fraction``, everything else ``complex``."""
    if isinstance(x, bool):
        x = int(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        x = x.strip()
        try:
            return Fraction(x)
        except ValueError:
            return complex(x.replace(" ", ""))
    if isinstance(x, Complex):
        return complex(x)
    raise TypeError(f"not a scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def scalar_abs(x: Scalar):
    """``|x|``: a Fraction for exact input, a float otherwise."""
    return abs(x)


class SparseVector:
    """Immutable finite-support function on the vertices of a graph model.

    >>> from lattice_shifts.graph import Strip
    >>> f = SparseVector.basis(Strip(2), (1, 1)) * 3
    >>> f[(1, 1)], f[(2, 5)]
    (Fraction(3, 1), 0)
    """

    __slots__ = ("model", "_data", "_exact")

    def __init__(self, model: GraphModel, data: Mapping[Vertex, object] | Iterable = (), *, validate=True):
        self.model = model
        items = data.items() if isinstance(data, Mapping) else data
        acc: dict[Vertex, Scalar] = {}
        exact = None
        for v, x in items:
            x = to_scalar(x)
            kind = isinstance(x, Fraction)
            if exact is None:
                exact = kind
            elif exact != kind:
                raise TypeError("exact and floating scalars cannot be mixed in one vector")
            if validate:
                v = model.check(v)
            acc[v] = acc.get(v, 0) + x
        self._data = MappingProxyType({v: x for v, x in acc.items() if x != 0})
        self._exact = True if exact is None else exact

    @classmethod
    def zero(cls, model: GraphModel) -> SparseVector:
        return cls(model)

    @classmethod
    def basis(cls, model: GraphModel, v: Vertex, coeff=1) -> SparseVector:
        return cls(model, {tuple(v): coeff})

    @property
    def exact(self) -> bool:
        return self._exact

    @property
    def data(self) -> Mapping[Vertex, Scalar]:
        return self._data

    def support(self) -> list[Vertex]:
        return sorted(self._data)

    def items(self):
        return self._data.items()

    def __getitem__(self, v):
        return self._data.get(tuple(v), 0)

    def __len__(self):
        return len(self._data)

    def __iter__(self):
        return iter(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def _same_model(self, other: SparseVector):
        if other.model != self.model:
            raise DomainError(f"vectors live on different models: {self.model} vs {other.model}")

    def __add__(self, other: SparseVector) -> SparseVector:
        if not isinstance(other, SparseVector):
            return NotImplemented
        self._same_model(other)
        out = dict(self._data)
        for v, x in other.items():
            out[v] = out.get(v, 0) + x
        return SparseVector(self.model, out, validate=False)

    def __neg__(self) -> SparseVector:
        return SparseVector(self.model, {v: -x for v, x in self.items()}, validate=False)

    def __sub__(self, other: SparseVector) -> SparseVector:
        return self + (-other)

    def __mul__(self, c) -> SparseVector:
        c = to_scalar(c)
        if self._data and isinstance(c, Fraction) != self._exact:
            raise TypeError("exact and floating scalars cannot be mixed in one vector")
        return SparseVector(self.model, {v: c * x for v, x in self.items()}, validate=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return self.model == other.model and dict(self._data) == dict(other._data)

    def __hash__(self):
        return hash((self.model, frozenset(self._data.items())))

    def __repr__(self):
        terms = " + ".join(f"{x}*e{v}" for v, x in sorted(self._data.items()))
        return f"SparseVector({self.model}, {terms or '0'})"

    def max_abs(self):
        return max((abs(x) for x in self._data.values()), default=0)

    def to_float(self) -> SparseVector:
        return SparseVector(self.model, {v: complex(x) for v, x in self.items()}, validate=False)

    def to_json(self) -> dict:
        entries = []
        for v, x in sorted(self._data.items()):
            item = {"vertex": vertex_to_json(v)}
            if isinstance(x, Fraction):
                item.update(num=str(x.numerator), den=str(x.denominator))
            else:
                item.update(re=x.real, im=x.imag)
            entries.append(item)
        return {"model": self.model.to_json(), "entries": entries}

    @classmethod
    def from_json(cls, data: dict, model: GraphModel | None = None) -> SparseVector:
        if model is None:
            model = model_from_json(data["model"])
        entries = data["entries"] if isinstance(data, dict) else data
        items = []
        for item in entries:
            v = vertex_from_json(item["vertex"])
            if "num" in item:
                x = Fraction(int(item["num"]), int(item.get("den", 1)))
            else:
                x = complex(item.get("re", 0.0), item.get("im", 0.0))
            items.append((v, x))
        return cls(model, items)


def max_deviation(a: SparseVector, b: SparseVector):
    """Largest ``|a(v) - b(v)|`` over the union of supports (exact when both are exact)."""
    if a.exact != b.exact:
        a, b = a.to_float(), b.to_float()
    return (a - b).max_abs()


# -- weights ---------------------------------------------------------------


def _pow(base, e):
    if isinstance(base, Fraction) or e >= 0:
        return base**e
    return 1 / base ** (-e)


@dataclass(frozen=True)
class WeightFamily:
    """A rule ``v -> mu_v`` with nonzero values."""

    def value(self, v: Vertex):
        raise NotImplementedError

    def __call__(self, v: Vertex) -> Scalar:
        x = to_scalar(self.value(tuple(v)))
        if x == 0:
            raise DomainError(f"weight vanishes at {v}")
        return x

    @property
    def exact(self) -> bool:
        return False


@dataclass(frozen=True)
class Constant(WeightFamily):
    c: object = 1

    def value(self, v):
        return self.c

    @property
    def exact(self):
        return is_exact(self.c)


@dataclass(frozen=True)
class GeometricJ(WeightFamily):
    """``mu = beta**j`` where ``j`` is the last coordinate (``k`` on path models)."""

    beta: object = Fraction(1, 2)

    def value(self, v):
        return _pow(to_scalar(self.beta), v[-1])

    @property
    def exact(self):
        return is_exact(self.beta)


@dataclass(frozen=True)
class GeometricSum(WeightFamily):
    """``mu = beta**(i + j)`` (``beta**k`` on path models)."""

    beta: object = 2

    def value(self, v):
        return _pow(to_scalar(self.beta), sum(v))

    @property
    def exact(self):
        return is_exact(self.beta)


@dataclass(frozen=True)
class PolynomialJ(WeightFamily):
    """``mu = (j + 1)**(-d)``."""

    d: object = 1

    def value(self, v):
        base = to_scalar(v[-1] + 1)
        d = to_scalar(self.d)
        if isinstance(d, Fraction) and d.denominator == 1:
            return _pow(base, -int(d))
        return complex(float(base) ** -float(d.real))

    @property
    def exact(self):
        return is_exact(self.d) and Fraction(self.d).denominator == 1


@dataclass(frozen=True)
class OneCoordinate(WeightFamily):
    """Weight depending on the layer index ``i`` only: ``mu_{i,j} = mu_i``.

    ``layer`` is either a callable ``i -> mu_i`` or a mapping.
    """

    layer: object = None
    exact_values: bool = True

    def value(self, v):
        if callable(self.layer):
            return self.layer(v[0])
        try:
            return self.layer[v[0]]
        except KeyError:
            raise DomainError(f"no weight for layer {v[0]}") from None

    @property
    def exact(self):
        return self.exact_values


@dataclass(frozen=True)
class Rule(WeightFamily):
    """Arbitrary callable weight ``v -> mu_v``."""

    fn: Callable = None
    exact_values: bool = True
    name: str = "rule"

    def value(self, v):
        return self.fn(v)

    @property
    def exact(self):
        return self.exact_values


@dataclass(frozen=True)
class Table(WeightFamily):
    """Finite table of weights with an optional fallback family."""

    table: Mapping = field(default_factory=dict)
    default: WeightFamily | None = None

    def __hash__(self):
        return hash((tuple(sorted(self.table.items(), key=lambda kv: kv[0])), self.default))

    def value(self, v):
        if v in self.table:
            return self.table[v]
        if self.default is None:
            raise DomainError(f"weight table has no entry for {v} and no default rule")
        return self.default(v)

    @property
    def exact(self):
        ok = all(isinstance(x, Fraction) for x in self.table.values())
        return ok and (self.default is None or self.default.exact)

    @classmethod
    def from_csv(cls, path, default: WeightFamily | None = None) -> Table:
        """Load columns ``i,j,re,im`` (``j`` empty for path vertices)."""
        table = {}
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                j = (row.get("j") or "").strip()
                v = (int(row["i"]), int(j)) if j else (int(row["i"]),)
                im = (row.get("im") or "0").strip()
                if im in ("", "0"):
                    table[v] = to_scalar(row["re"])
                else:
                    table[v] = complex(float(row["re"]), float(im))
        return cls(table, default)


def eval_weight(family: WeightFamily, v: Vertex) -> Scalar:
    return family(v)


# -- norms -----------------------------------------------------------------


@dataclass(frozen=True)
class Lp:
    p: object = 2

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("p must satisfy p >= 1")


@dataclass(frozen=True)
class C0:
    pass


def _abs_weighted(vec: SparseVector, family: WeightFamily):
    exact = vec.exact and family.exact
    for v, x in vec.items():
        w = family(v)
        if exact:
            yield abs(x * w)
        else:
            yield abs(complex(x) * complex(w))


def norm_pow(vec: SparseVector, family: WeightFamily, p: int):
    """``sum |f(v) mu_v|**p``; exact (a Fraction) for integer ``p`` and exact data."""
    if isinstance(p, int) and vec.exact and family.exact:
        return sum((a**p for a in _abs_weighted(vec, family)), Fraction(0))
    return math.fsum(float(a) ** float(p) for a in _abs_weighted(vec, family))


def norm(vec: SparseVector, family: WeightFamily, space: Lp | C0 = Lp(2)):
    """Norm of ``vec`` in ``l^p(V, mu)`` or ``c_0(V, mu)``.

    The sup-norm and the ``p = 1`` norm come back exact for exact data; other
    exponents return a float.
    """
    if isinstance(space, C0):
        return max(_abs_weighted(vec, family), default=0)
    p = space.p
    if p == 1:
        s = norm_pow(vec, family, 1)
        return s
    return float(norm_pow(vec, family, p)) ** (1.0 / float(p))


# -- boundedness -----------------------------------------------------------


@dataclass
class BoundednessReport:
    constant: object
    constant_half: object
    verdict: str
    extent: int
    worst_vertex: Vertex | None

    def to_json(self) -> dict:
        return {
            "constant": str(self.constant),
            "constant_half": str(self.constant_half),
            "verdict": self.verdict,
            "extent": self.extent,
            "worst_vertex": self.worst_vertex,
        }


def _edge_ratio_sup(model, family, size):
    best, arg = 0, None
    for v in model.truncate(size):
        kids = model.children(v)
        if not kids:
            continue
        low = min(abs(family(u)) for u in kids)
        r = abs(family(v)) / low
        if r > best:
            best, arg = r, v
    return best, arg


def boundedness_report(model: GraphModel, family: WeightFamily, size: int, growth_factor=2) -> BoundednessReport:
    """Empirical constant ``C`` with ``|mu_v| <= C min_{u in Chi(v)} |mu_u|`` over the box.

    The constant over the full box is compared with the constant over the
    half-size box: if it grew by more than ``growth_factor`` the ratio is still
    climbing (``unbounded-evidence``), otherwise ``bounded-evidence``. This is
    evidence about the scanned box only.
    """
    c_full, arg = _edge_ratio_sup(model, family, size)
    c_half, _ = _edge_ratio_sup(model, family, size // 2)
    grew = c_half == 0 and c_full > 0 or c_half > 0 and c_full > growth_factor * c_half
    verdict = "unbounded-evidence" if grew else "bounded-evidence"
    return BoundednessReport(c_full, c_half, verdict, size, arg)
