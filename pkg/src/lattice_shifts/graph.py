"""Directed lattice-type graph models.

Vertices are plain tuples of integers: ``(i, j)`` for the two-dimensional
models and ``(k,)`` for the path models. Indexing follows the formulas each
model is used with:

* ``Strip(m)``: ``1 <= i <= m``, ``j >= 1``.
* ``BilateralStrip(m)``: ``1 <= i <= m``, ``j`` any integer.
* ``Quadrant``: ``i >= 0``, ``j >= 0``.
* ``HalfPlane``: ``i >= 0``, ``j`` any integer.
* ``PathCycle``, ``SkipPath``: ``k >= 1``.
* ``DiamondChain``: ``i, j >= 1`` with ``|i - j| <= 1``.

Every model describes edges ``v -> u`` through :meth:`GraphModel.children`;
the backward shift reads values from children.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Iterable

Vertex = tuple[int, ...]


class DomainError(ValueError):
    """Raised for inputs outside the mathematical domain of an operation."""


class UnsupportedModelError(DomainError):
    """Raised when an operation has no implementation for a graph model."""


@dataclass(frozen=True)
class GraphModel:
    kind: ClassVar[str] = ""
    dim: ClassVar[int] = 2

    def admissible(self, v: Vertex) -> bool:
        raise NotImplementedError

    def _children(self, v: Vertex) -> list[Vertex]:
        raise NotImplementedError

    def _parents(self, v: Vertex) -> list[Vertex]:
        raise NotImplementedError

    def in_box(self, v: Vertex, size: int) -> bool:
        """Whether ``v`` lies in the truncation box of the given size."""
        raise NotImplementedError

    def _box(self, size: int) -> Iterable[Vertex]:
        raise NotImplementedError

    def check(self, v: Vertex) -> Vertex:
        v = tuple(int(c) for c in v)
        if len(v) != self.dim or not self.admissible(v):
            raise DomainError(f"vertex {v} is not admissible in {self}")
        return v

    def children(self, v: Vertex) -> frozenset[Vertex]:
        return frozenset(self._children(self.check(v)))

    def parents(self, v: Vertex) -> frozenset[Vertex]:
        return frozenset(self._parents(self.check(v)))

    def children_n(self, v: Vertex, n: int) -> frozenset[Vertex]:
        if n < 1:
            raise DomainError("n must be a positive integer")
        layer = {self.check(v)}
        for _ in range(n):
            layer = {u for w in layer for u in self._children(w)}
        return frozenset(layer)

    def truncate(self, size: int) -> list[Vertex]:
        """All vertices in the box of the given size, sorted by ``(i, j)``."""
        if size < 0:
            return []
        return sorted(v for v in self._box(size) if self.admissible(v))

    def to_json(self) -> dict:
        return {"kind": self.kind}

    def __str__(self) -> str:
        return self.kind


@dataclass(frozen=True)
class Strip(GraphModel):
    """``[1..m] x N`` with edges ``v_{i,j} -> v_{i,j+1}`` and ``v_{i,j} -> v_{i+1,j}`` (``i < m``).

    Box of size ``J``: ``1 <= j <= J``.
    """

    m: int = 1
    kind: ClassVar[str] = "strip"

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("strip height must be positive")

    def _jmin(self):
        return 1

    def admissible(self, v):
        i, j = v
        return 1 <= i <= self.m and j >= self._jmin()

    def _children(self, v):
        i, j = v
        out = [(i, j + 1)]
        if i < self.m:
            out.append((i + 1, j))
        return out

    def _parents(self, v):
        i, j = v
        return [u for u in ((i - 1, j), (i, j - 1)) if self.admissible(u)]

    def in_box(self, v, size):
        return self.admissible(v) and v[1] <= size

    def _box(self, size):
        return ((i, j) for i in range(1, self.m + 1) for j in range(1, size + 1))

    def to_json(self):
        return {"kind": self.kind, "m": self.m}

    def __str__(self):
        return f"{self.kind}:{self.m}"


@dataclass(frozen=True)
class BilateralStrip(Strip):
    """``[1..m] x Z``; box of size ``J`` is ``|j| <= J``."""

    kind: ClassVar[str] = "bistrip"

    def admissible(self, v):
        return 1 <= v[0] <= self.m

    def in_box(self, v, size):
        return self.admissible(v) and abs(v[1]) <= size

    def _box(self, size):
        return ((i, j) for i in range(1, self.m + 1) for j in range(-size, size + 1))


@dataclass(frozen=True)
class Quadrant(GraphModel):
    """``N_0 x N_0``; box of size ``D`` is ``i + j <= D``."""

    kind: ClassVar[str] = "quadrant"

    def admissible(self, v):
        return v[0] >= 0 and v[1] >= 0

    def _children(self, v):
        i, j = v
        return [(i, j + 1), (i + 1, j)]

    def _parents(self, v):
        i, j = v
        return [u for u in ((i - 1, j), (i, j - 1)) if self.admissible(u)]

    def in_box(self, v, size):
        return self.admissible(v) and v[0] + v[1] <= size

    def _box(self, size):
        return ((i, d - i) for d in range(size + 1) for i in range(d + 1))


@dataclass(frozen=True)
class HalfPlane(Quadrant):
    """``N_0 x Z`` (layer index ``i >= 0``); box of size ``S`` is ``i <= S, |j| <= S``."""

    kind: ClassVar[str] = "halfplane"

    def admissible(self, v):
        return v[0] >= 0

    def in_box(self, v, size):
        return 0 <= v[0] <= size and abs(v[1]) <= size

    def _box(self, size):
        return ((i, j) for i in range(size + 1) for j in range(-size, size + 1))


@dataclass(frozen=True)
class _Path(GraphModel):
    dim: ClassVar[int] = 1

    def admissible(self, v):
        return v[0] >= 1

    def in_box(self, v, size):
        return 1 <= v[0] <= size

    def _box(self, size):
        return ((k,) for k in range(1, size + 1))


@dataclass(frozen=True)
class PathCycle(_Path):
    """``v_k -> v_{k+1}`` for all ``k`` plus the extra edge ``v_2 -> v_1``."""

    kind: ClassVar[str] = "pathcycle"

    def _children(self, v):
        (k,) = v
        return [(k + 1,), (1,)] if k == 2 else [(k + 1,)]

    def _parents(self, v):
        (k,) = v
        if k == 1:
            return [(2,)]
        return [(k - 1,)]


@dataclass(frozen=True)
class SkipPath(_Path):
    """``v_k -> v_{k+1}`` and ``v_k -> v_{k+2}``; the shift is ``B_0 (I + B_0)``."""

    kind: ClassVar[str] = "skippath"

    def _children(self, v):
        (k,) = v
        return [(k + 1,), (k + 2,)]

    def _parents(self, v):
        (k,) = v
        return [(p,) for p in (k - 1, k - 2) if p >= 1]


@dataclass(frozen=True)
class DiamondChain(GraphModel):
    """Chain of diamonds on ``{v_{i,j} : i, j >= 1, |i - j| <= 1}``.

    Edges: ``v_{i,i} -> v_{i+1,i}``, ``v_{i,i} -> v_{i,i+1}``,
    ``v_{i+1,i} -> v_{i+1,i+1}`` and ``v_{i,i+1} -> v_{i+1,i+1}``.
    Box of size ``S`` is ``max(i, j) <= S``.
    """

    kind: ClassVar[str] = "diamond"

    def admissible(self, v):
        i, j = v
        return i >= 1 and j >= 1 and abs(i - j) <= 1

    def _children(self, v):
        i, j = v
        if i == j:
            return [(i + 1, i), (i, i + 1)]
        d = max(i, j)
        return [(d, d)]

    def _parents(self, v):
        i, j = v
        if i == j:
            return [] if i == 1 else [(i, i - 1), (i - 1, i)]
        d = min(i, j)
        return [(d, d)]

    def in_box(self, v, size):
        return self.admissible(v) and max(v) <= size

    def _box(self, size):
        return ((i, j) for i in range(1, size + 1) for j in range(max(1, i - 1), min(size, i + 1) + 1))


_KINDS = {cls.kind: cls for cls in (Strip, BilateralStrip, Quadrant, HalfPlane, PathCycle, SkipPath, DiamondChain)}


def model_from_json(data: dict) -> GraphModel:
    try:
        cls = _KINDS[data["kind"]]
    except KeyError:
        raise DomainError(f"unknown graph model {data!r}") from None
    if issubclass(cls, Strip):
        return cls(int(data.get("m", 1)))
    return cls()


def parse_model(text: str) -> GraphModel:
    """Parse a compact descriptor such as ``strip:3`` or ``quadrant``."""
    kind, _, arg = text.partition(":")
    data = {"kind": kind.strip().lower()}
    if arg:
        data["m"] = int(arg)
    return model_from_json(data)


def vertex_to_json(v: Vertex) -> dict:
    if len(v) == 1:
        return {"k": v[0]}
    return {"i": v[0], "j": v[1]}


def vertex_from_json(data: dict) -> Vertex:
    if "k" in data:
        return (int(data["k"]),)
    return (int(data["i"]), int(data["j"]))


def children(model: GraphModel, v: Vertex) -> frozenset[Vertex]:
    return model.children(v)


def parents(model: GraphModel, v: Vertex) -> frozenset[Vertex]:
    return model.parents(v)


def children_n(model: GraphModel, v: Vertex, n: int) -> frozenset[Vertex]:
    return model.children_n(v, n)


def truncate(model: GraphModel, size: int) -> list[Vertex]:
    return model.truncate(size)


def structural_obstruction(model: GraphModel, size: int) -> Vertex | None:
    """Search the box for a vertex with several parents that are all its exclusive feeders.

    A vertex ``v`` with ``|Par(v)| > 1`` and ``Chi(Par(v)) = {v}`` forces
    ``(B^n f)(u) = (B^{n-1} f)(v)`` for every parent ``u``, so the orbit can
    never approximate vectors that differ on two parents. The shift is then
    not hypercyclic for any weight.
    """
    for v in model.truncate(size):
        par = model.parents(v)
        if len(par) > 1 and all(model.children(u) == {v} for u in par):
            return v
    return None
