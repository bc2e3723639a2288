"""The unweighted backward shift ``(Bf)(v) = sum_{u in Chi(v)} f(u)`` and its powers.

Powers are available both by iteration (:func:`power_apply`) and through the
binomial closed forms of the lattice models (:func:`power_closed`). The module
also carries the two intertwining maps used to transfer dynamics between
models: restriction to a sub-lattice and regrouping of the half-plane by
anti-diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .graph import (
    BilateralStrip,
    DomainError,
    GraphModel,
    HalfPlane,
    PathCycle,
    Quadrant,
    Strip,
    UnsupportedModelError,
)
from .space import SparseVector


def _check_model(model: GraphModel, vec: SparseVector):
    if vec.model != model:
        raise DomainError(f"vector lives on {vec.model}, not on {model}")


def apply(model: GraphModel, vec: SparseVector) -> SparseVector:
    """One application of ``B``: each ``f(v) e_v`` is sent to ``f(v) sum_{u in Par(v)} e_u``."""
    _check_model(model, vec)
    out: dict = {}
    for v, x in vec.items():
        for u in model.parents(v):
            out[u] = out.get(u, 0) + x
    return SparseVector(model, out, validate=False)


def power_apply(model: GraphModel, vec: SparseVector, n: int) -> SparseVector:
    if n < 0:
        raise DomainError("power must be nonnegative")
    _check_model(model, vec)
    for _ in range(n):
        if vec.is_zero():
            break
        vec = apply(model, vec)
    return vec


def _strip_terms(model: Strip, v, n):
    i, j = v
    bilateral = isinstance(model, BilateralStrip)
    for l in range(min(n, i - 1) + 1):
        jj = j - n + l
        if bilateral or jj >= 1:
            yield (i - l, jj), comb(n, l)


def _quadrant_terms(model: Quadrant, v, n):
    i, j = v
    lo = 0 if isinstance(model, HalfPlane) else max(0, n - j)
    for l in range(lo, min(n, i) + 1):
        yield (i - l, j - (n - l)), comb(n, l)


def _pathcycle_terms(v, n):
    # n = 2t - 1: position 1 collects even k <= 2t, position 2 odd k <= 2t + 1,
    # the rest moves left by n. n = 2t: position 1 collects odd k <= 2t + 1,
    # position 2 even k <= 2t + 2.
    (k,) = v
    t, odd_power = (n + 1) // 2, n % 2 == 1
    if odd_power:
        if k % 2 == 0 and k <= 2 * t:
            yield (1,), 1
        elif k % 2 == 1 and k <= 2 * t + 1:
            yield (2,), 1
        else:
            yield (k - n,), 1
    else:
        if k % 2 == 1 and k <= 2 * t + 1:
            yield (1,), 1
        elif k % 2 == 0 and k <= 2 * t + 2:
            yield (2,), 1
        else:
            yield (k - n,), 1


def power_closed(model: GraphModel, vec: SparseVector, n: int) -> SparseVector:
    """``B^n f`` from the closed formulas, extended linearly.

    Strips use ``B^n e_{i,j} = sum_l C(n,l) e_{i-l, j-n+l}`` with out-of-range
    terms dropped; the quadrant restricts ``l`` to ``max(0, n-j) .. min(n, i)``;
    the path with a cycle uses the two parity formulas.
    """
    if n < 0:
        raise DomainError("power must be nonnegative")
    _check_model(model, vec)
    if n == 0:
        return vec
    if isinstance(model, Strip):
        terms = lambda v: _strip_terms(model, v, n)
    elif isinstance(model, Quadrant):
        terms = lambda v: _quadrant_terms(model, v, n)
    elif isinstance(model, PathCycle):
        terms = lambda v: _pathcycle_terms(v, n)
    else:
        raise UnsupportedModelError(f"no closed form for powers on {model}; use power_apply")
    out: dict = {}
    for v, x in vec.items():
        for u, c in terms(v):
            out[u] = out.get(u, 0) + c * x
    return SparseVector(model, out, validate=False)


_SUBMODELS = {BilateralStrip: Strip, HalfPlane: Quadrant}


def restrict(vec: SparseVector, target: GraphModel) -> SparseVector:
    """Restriction ``f -> f|_V`` to a sub-lattice closed under outgoing edges.

    Supported pairs: bilateral strip -> strip of the same height, half-plane
    -> quadrant. The restriction intertwines the two shifts.
    """
    src = vec.model
    sub = _SUBMODELS.get(type(src))
    if sub is None or type(target) is not sub or getattr(src, "m", None) != getattr(target, "m", None):
        raise DomainError(f"{target} is not an edge-closed sub-lattice of {src}")
    return SparseVector(target, {v: x for v, x in vec.items() if target.admissible(v)}, validate=False)


@dataclass
class DiagonalBlocks:
    """Anti-diagonal slices ``k -> {i: f(v_{i, k-i})}`` of a lattice vector."""

    model: GraphModel
    blocks: dict[int, dict[int, object]] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.model, Quadrant):
            raise DomainError("diagonal blocks are defined on the quadrant and the half-plane")
        self.blocks = {k: {i: x for i, x in b.items() if x != 0} for k, b in self.blocks.items()}
        self.blocks = {k: b for k, b in self.blocks.items() if b}

    def __eq__(self, other):
        if not isinstance(other, DiagonalBlocks):
            return NotImplemented
        return self.model == other.model and self.blocks == other.blocks

    def is_zero(self):
        return not self.blocks


def diagonal_regroup(vec: SparseVector) -> DiagonalBlocks:
    blocks: dict[int, dict[int, object]] = {}
    for (i, j), x in vec.items():
        blocks.setdefault(i + j, {})[i] = x
    return DiagonalBlocks(vec.model, blocks)


def diagonal_ungroup(blocks: DiagonalBlocks) -> SparseVector:
    return SparseVector(
        blocks.model,
        {(i, k - i): x for k, b in blocks.blocks.items() for i, x in b.items()},
    )


def generalized_shift_apply(blocks: DiagonalBlocks) -> DiagonalBlocks:
    """``(x_k)_k -> ((I + B_0) x_{k+1})_k`` with ``B_0`` the unilateral backward shift in ``i``.

    On the quadrant, entries that would land outside ``0 <= i <= k`` are dropped.
    """
    quadrant = not isinstance(blocks.model, HalfPlane)
    out: dict[int, dict[int, object]] = {}
    for k1, b in blocks.blocks.items():
        k = k1 - 1
        if quadrant and k < 0:
            continue
        row = out.setdefault(k, {})
        for i, x in b.items():
            # (I + B_0) x at layer i reads x[i] and x[i + 1].
            for target in (i, i - 1):
                if target < 0 or quadrant and target > k:
                    continue
                row[target] = row.get(target, 0) + x
    return DiagonalBlocks(blocks.model, out)
