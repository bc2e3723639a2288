"""Finite-horizon checks of the hypercyclicity and mixing conditions on weights.

Every report describes the scanned horizon only. ``no-witness-up-to-horizon``
is never a proof of non-hypercyclicity; ``obstruction-certified`` is backed by
a lower bound ``|mu| >= c * q**level`` observed to stabilize over the horizon
and is flagged ``exact_family`` when the weight's closed form makes the bound
hold everywhere.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb

from .graph import DomainError
from .space import GeometricSum, WeightFamily, to_scalar

GOLDEN = (1 + math.sqrt(5)) / 2
DEFAULT_WINDOW = 10
DEFAULT_MARGIN = 0.05
DEFAULT_LENGTH = 8
STABILITY_RTOL = 1e-9


class Verdict(str, Enum):
    WITNESS_FOUND = "witness-found"
    NO_WITNESS = "no-witness-up-to-horizon"
    OBSTRUCTION = "obstruction-certified"
    MIXING = "mixing-evidence"
    INCONCLUSIVE = "inconclusive"

    def __str__(self):
        return self.value


@dataclass
class CriterionReport:
    criterion: str
    verdict: Verdict
    horizon: int
    evidence: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "verdict": self.verdict.value,
            "horizon": self.horizon,
            "evidence": _jsonable(self.evidence),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "quantity"])
        for n, q in self.trace:
            w.writerow([n, repr(float(q))])
        return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return float(x) if x.denominator != 1 else int(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def _log_mag(x) -> float:
    """``log |x|`` without overflowing on huge or tiny exact values."""
    a = abs(x)
    if isinstance(a, Fraction):
        return math.log(a.numerator) - math.log(a.denominator)
    return math.log(a)


def _mag(family: WeightFamily, v) -> float:
    x = family(v)
    try:
        return float(abs(x))
    except OverflowError:
        return math.inf


def default_thresholds(length: int = DEFAULT_LENGTH) -> list[float]:
    return [2.0**-k for k in range(1, length + 1)]


def _greedy(quantities, thresholds):
    """Pick ``n_1 < n_2 < ...`` in ascending scan order with ``q(n_k) <= eps_k``."""
    chosen = []
    for n, q in quantities:
        if len(chosen) == len(thresholds):
            break
        if q <= thresholds[len(chosen)]:
            chosen.append((n, q))
    return chosen


def _strip_scan(family, m, horizon, window, bilateral):
    trace = []
    for n in range(1, horizon + 1):
        q = 0.0
        for i in range(1, m + 1):
            poly = float(n) ** (m - i)
            if bilateral:
                val = max(_mag(family, (i, j + n)) + _mag(family, (i, j - n)) for j in range(-window, window + 1))
            else:
                # j = 0 is the one-parameter quantity n^{m-i} |mu_{i,n}|.
                val = max(_mag(family, (i, j + n)) for j in range(0, window + 1))
            q = max(q, poly * val)
        trace.append((n, q))
    return trace


def _witness_report(name, trace, horizon, thresholds, extra):
    chosen = _greedy(trace, thresholds)
    evidence = dict(extra)
    evidence["thresholds"] = list(thresholds)
    evidence["witness"] = [n for n, _ in chosen]
    evidence["achieved"] = [q for _, q in chosen]
    if not trace:
        verdict = Verdict.INCONCLUSIVE
    elif len(chosen) == len(thresholds):
        verdict = Verdict.WITNESS_FOUND
    else:
        verdict = Verdict.NO_WITNESS
        best_n, best_q = min(trace, key=lambda t: (t[1], t[0]))
        evidence["best_n"] = best_n
        evidence["best_decay"] = best_q
    return CriterionReport(name, verdict, horizon, evidence, trace)


def strip_criterion(
    family: WeightFamily,
    m: int,
    horizon: int,
    window: int = DEFAULT_WINDOW,
    thresholds=None,
) -> CriterionReport:
    """Search for ``n_k`` with ``sup_{i <= m, j <= window} n_k^{m-i} |mu_{i, j+n_k}| <= eps_k``.

    The window starts at ``j = 0`` so that the one-parameter quantity
    ``max_i n^{m-i} |mu_{i,n}|`` is part of every check. Selection is greedy
    in ascending ``n`` over the complete scan, so a witness found at one
    horizon stays a witness at every larger horizon.
    """
    thresholds = list(thresholds) if thresholds is not None else default_thresholds()
    _check_thresholds(thresholds)
    trace = _strip_scan(family, m, horizon, window, False)
    return _witness_report("strip", trace, horizon, thresholds, {"m": m, "window": window})


def strip_criterion_bilateral(
    family: WeightFamily,
    m: int,
    horizon: int,
    window: int = DEFAULT_WINDOW,
    thresholds=None,
) -> CriterionReport:
    """Two-sided version: ``n^{m-i} (|mu_{i,j+n}| + |mu_{i,j-n}|)`` over ``|j| <= window``."""
    thresholds = list(thresholds) if thresholds is not None else default_thresholds()
    _check_thresholds(thresholds)
    trace = _strip_scan(family, m, horizon, window, True)
    return _witness_report("strip-bilateral", trace, horizon, thresholds, {"m": m, "window": window})


def _check_thresholds(thresholds):
    if not thresholds or any(b >= a for a, b in zip(thresholds, thresholds[1:])):
        raise DomainError("thresholds must be a nonempty strictly decreasing sequence")


def _root_mag(x, level):
    """``|x|^(1/level)`` computed through logarithms."""
    return math.exp(_log_mag(x) / level)


def _limsup_estimate(family, levels):
    return max(_root_mag(family(v), lvl) for lvl, v in levels)


def _quadrant_levels(lo, hi):
    for d in range(max(lo, 1), hi + 1):
        for i in range(d + 1):
            yield d, (i, d - i)


def quadrant_mixing_test(family: WeightFamily, extent: int, margin: float = DEFAULT_MARGIN) -> CriterionReport:
    """``q_hat = max_{D/2 <= i+j <= D} |mu_{i,j}|^{1/(i+j)}``; mixing evidence when ``q_hat < 2 - margin``."""
    if extent < 1:
        return CriterionReport("quadrant-mixing", Verdict.INCONCLUSIVE, extent, {"q_hat": None})
    q_hat = _limsup_estimate(family, _quadrant_levels(extent // 2, extent))
    verdict = Verdict.MIXING if q_hat < 2 - margin else Verdict.INCONCLUSIVE
    return CriterionReport("quadrant-mixing", verdict, extent, {"q_hat": q_hat, "margin": margin})


def _lower_constant(family, vertices, base, exact):
    """``min |mu_v| / base**level(v)``, exact when possible."""
    best = None
    for lvl, v in vertices:
        x = family(v)
        if exact and isinstance(x, Fraction):
            c = abs(x) / Fraction(base) ** lvl
        else:
            c = math.exp(_log_mag(x) - lvl * math.log(float(base)))
        if best is None or c < best:
            best = c
    return best


def _obstruction(family, levels_half, levels_full, base, level_top, margin, exact):
    c_half = _lower_constant(family, levels_half, base, exact)
    c_full = _lower_constant(family, levels_full, base, exact)
    # c >= floor forces |mu|^(1/level) >= base - margin at the top level, so the
    # obstruction and the mixing verdict cannot both fire on one horizon.
    floor = (1 - margin / float(base)) ** level_top
    stable = c_full > 0 and float(c_full) >= float(c_half) * (1 - STABILITY_RTOL)
    return c_full, c_half, floor, stable and float(c_full) >= floor


def quadrant_obstruction_test(family: WeightFamily, extent: int, margin: float = DEFAULT_MARGIN) -> CriterionReport:
    """``c_hat = min_{i+j <= D} |mu_{i,j}| / 2^{i+j}``; certified when it stabilizes above a floor."""
    if extent < 1:
        return CriterionReport("quadrant-obstruction", Verdict.INCONCLUSIVE, extent, {"c_hat": None})
    full = list(_quadrant_levels(0, extent)) + [(0, (0, 0))]
    half = list(_quadrant_levels(0, extent // 2)) + [(0, (0, 0))]
    c_full, c_half, floor, ok = _obstruction(family, half, full, 2, extent, margin, family.exact)
    exact_family = (
        isinstance(family, GeometricSum) and _is_real_at_least(family.beta, 2)
    )
    verdict = Verdict.OBSTRUCTION if ok else Verdict.INCONCLUSIVE
    evidence = {"c_hat": c_full, "c_hat_half": c_half, "floor": floor, "exact_family": exact_family and ok}
    return CriterionReport("quadrant-obstruction", verdict, extent, evidence)


def _is_real_at_least(x, bound):
    x = to_scalar(x)
    if isinstance(x, complex):
        return x.imag == 0 and x.real >= bound
    return x >= bound


def necessary_sum(family: WeightFamily, p, n: int, anchor=(0, 0)):
    """``sum_{l=0}^{n} C(n,l)^{p'} / |mu_{i+l, j+n-l}|^{p'}`` with ``1/p + 1/p' = 1``.

    Exact (a Fraction) when the weights are exact and ``p'`` is an integer.
    """
    p = to_scalar(p)
    if isinstance(p, complex):
        if p.imag != 0:
            raise DomainError("p must be real")
        p = p.real
    if p <= 1:
        raise DomainError("the necessary condition is stated for 1 < p < infinity")
    q = p / (p - 1)
    i, j = anchor
    verts = [(i + l, j + n - l) for l in range(n + 1)]
    if isinstance(q, Fraction) and q.denominator == 1 and family.exact:
        q = int(q)
        return sum((Fraction(comb(n, l)) ** q / abs(family(v)) ** q for l, v in enumerate(verts)), Fraction(0))
    q = float(q)
    return math.fsum(comb(n, l) ** q / _mag(family, v) ** q for l, v in enumerate(verts))


def skip_graph_test(family: WeightFamily, horizon: int, margin: float = DEFAULT_MARGIN) -> CriterionReport:
    """Critical growth test for ``B_0 (I + B_0)`` at the golden ratio ``q_0``.

    ``q_hat = max_{N/2 <= n <= N} |mu_n|^{1/n}`` below ``q_0 - margin`` gives
    mixing evidence; ``min_n |mu_n| / q_0^n`` stabilizing above a floor gives
    an obstruction.
    """
    if horizon < 1:
        return CriterionReport("skip-graph", Verdict.INCONCLUSIVE, horizon, {"q_hat": None})
    upper = [(n, (n,)) for n in range(max(horizon // 2, 1), horizon + 1)]
    q_hat = _limsup_estimate(family, upper)
    full = [(n, (n,)) for n in range(1, horizon + 1)]
    half = [(n, (n,)) for n in range(1, max(horizon // 2, 1) + 1)]
    c_full, c_half, floor, ok = _obstruction(family, half, full, GOLDEN, horizon, margin, False)
    evidence = {"q_hat": q_hat, "c_hat": c_full, "c_hat_half": c_half, "floor": floor, "critical": GOLDEN}
    if q_hat < GOLDEN - margin:
        verdict = Verdict.MIXING
    elif ok:
        verdict = Verdict.OBSTRUCTION
    else:
        verdict = Verdict.INCONCLUSIVE
    return CriterionReport("skip-graph", verdict, horizon, evidence)
