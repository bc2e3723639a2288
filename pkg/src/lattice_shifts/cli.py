"""Command-line front end.

Exit status: 0 on success, 2 on a domain error, 1 on a usage error. Errors go
to stderr as a single JSON line. Identical arguments give byte-identical
output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
from fractions import Fraction

from . import criteria, graph, oracle, rightinv, shift, spectral
from .graph import DomainError, GraphModel
from .space import (
    C0,
    Constant,
    GeometricJ,
    GeometricSum,
    Lp,
    OneCoordinate,
    PolynomialJ,
    SparseVector,
    Table,
    WeightFamily,
    boundedness_report,
    norm,
    to_scalar,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- descriptor grammars -----------------------------------------------------


def parse_weight(text: str) -> WeightFamily:
    """``const:c``, ``geomJ:b``, ``geomSum:b``, ``polyJ:d``, ``onecoord:FILE``, ``table:FILE``."""
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind in ("const", "constant"):
        return Constant(to_scalar(arg or "1"))
    if kind == "geomj":
        return GeometricJ(to_scalar(arg))
    if kind == "geomsum":
        return GeometricSum(to_scalar(arg))
    if kind == "polyj":
        return PolynomialJ(to_scalar(arg))
    if kind == "table":
        return Table.from_csv(arg)
    if kind == "onecoord":
        layers = {v[0]: x for v, x in Table.from_csv(arg).table.items()}
        return OneCoordinate(layers, all(isinstance(x, Fraction) for x in layers.values()))
    raise UsageError(f"unknown weight descriptor {text!r}")


_ATOM = re.compile(r"\s*([+-])?\s*(?:([0-9./eE]+)\s*\*\s*)?e:\s*(-?\d+)(?:\s*,\s*(-?\d+))?\s*")


def parse_vector(text: str, model: GraphModel) -> SparseVector:
    """Vectors such as ``e:1,2 - 3/2*e:2,2`` (or ``e:4`` on path models)."""
    items, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _ATOM.match(text, pos)
        if not m or m.end() == pos:
            raise UsageError(f"cannot parse vector near {text[pos:]!r}")
        sign, coeff, a, b = m.groups()
        c = to_scalar(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        v = (int(a),) if b is None else (int(a), int(b))
        items.append((v, c))
        pos = m.end()
    if not items:
        raise UsageError("empty vector")
    return SparseVector(model, items)


def _vector_payload(vec: SparseVector) -> dict:
    return {"vector": vec.to_json(), "text": _vector_text(vec)}


def _vector_text(vec: SparseVector) -> str:
    if vec.is_zero():
        return "0"
    parts = []
    for v, x in sorted(vec.items()):
        parts.append(f"{x}*e:{','.join(map(str, v))}")
    return " + ".join(parts)


def _vector_csv(vec: SparseVector) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if vec.exact:
        w.writerow(["i", "j", "num", "den"])
        for v, x in sorted(vec.items()):
            w.writerow([*_ij(v), x.numerator, x.denominator])
    else:
        w.writerow(["i", "j", "re", "im"])
        for v, x in sorted(vec.items()):
            w.writerow([*_ij(v), repr(x.real), repr(x.imag)])
    return buf.getvalue()


def _ij(v):
    return (v[0], "") if len(v) == 1 else v


def _grid(text: str):
    """``a:b:n`` (n evenly spaced points) or a comma-separated list."""
    if text.count(":") == 2:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
        if n == 1:
            return [a]
        return [a + (b - a) * k / (n - 1) for k in range(n)]
    return [complex(t) if "j" in t else float(t) for t in text.split(",") if t.strip()]


# -- subcommands -------------------------------------------------------------


def cmd_apply(args):
    model = graph.parse_model(args.model)
    return shift.apply(model, parse_vector(args.vec, model))


def cmd_power(args):
    model = graph.parse_model(args.model)
    vec = parse_vector(args.vec, model)
    if args.method == "closed":
        return shift.power_closed(model, vec, args.n)
    return shift.power_apply(model, vec, args.n)


def _params(text):
    if not text:
        return None
    return rightinv.DiagonalBasisParams(tuple(to_scalar(t) for t in text.split(",")))


def cmd_rightinv(args):
    model = graph.parse_model(args.model)
    if args.table:
        if not isinstance(model, graph.Strip):
            raise DomainError("alpha tables exist for strip models only")
        return rightinv.alpha_table(model.m, args.n)
    if args.vec is None:
        raise UsageError("--vec is required unless --table is given")
    vec = parse_vector(args.vec, model)
    if isinstance(model, graph.Strip):
        return rightinv.right_inverse_strip(vec, args.n)
    if type(model) is graph.Quadrant:
        return rightinv.right_inverse_quadrant(vec, args.n, _params(args.params))
    raise graph.UnsupportedModelError(f"no right inverse implemented on {model}")


def cmd_hc_assemble(args):
    model = graph.parse_model(args.model)
    schedule = [(int(n), parse_vector(v, model)) for n, v in args.term or []]
    f = rightinv.hc_approximant(model, schedule, _params(args.params))
    out = _vector_payload(f)
    if args.weight:
        w = parse_weight(args.weight)
        space = C0() if args.p == "inf" else Lp(to_scalar(args.p))
        out["errors"] = [
            {"n": n, "error": float(norm(shift.power_apply(model, f, n) - g, w, space))} for n, g in schedule
        ]
    return out


def cmd_check(args):
    c = args.criterion
    if c in ("structural", "bounded"):
        model = graph.parse_model(args.model or "strip:1")
        if c == "structural":
            v = graph.structural_obstruction(model, args.horizon)
            verdict = criteria.Verdict.OBSTRUCTION if v is not None else criteria.Verdict.NO_WITNESS
            return criteria.CriterionReport("structural", verdict, args.horizon, {"witness_vertex": v})
        rep = boundedness_report(model, parse_weight(args.weight), args.horizon)
        return {"criterion": "bounded", **rep.to_json()}
    weight = parse_weight(args.weight)
    thresholds = criteria.default_thresholds(args.length)
    if c == "strip":
        return criteria.strip_criterion(weight, args.m, args.horizon, args.window, thresholds)
    if c == "strip-bilateral":
        return criteria.strip_criterion_bilateral(weight, args.m, args.horizon, args.window, thresholds)
    if c == "quadrant-mixing":
        return criteria.quadrant_mixing_test(weight, args.horizon, args.margin)
    if c == "quadrant-obstruction":
        return criteria.quadrant_obstruction_test(weight, args.horizon, args.margin)
    return criteria.skip_graph_test(weight, args.horizon, args.margin)


def cmd_eigen(args):
    if args.family == "quadrant":
        if args.r is None:
            raise UsageError("--r is required for the quadrant family")
        pair = spectral.eigenvector_quadrant(to_scalar(args.r), to_scalar(args.s), args.extent)
        model = graph.Quadrant()
    else:
        pair = spectral.eigenvector_skip(to_scalar(args.s), args.extent)
        model = graph.SkipPath()
    res = spectral.eigen_residual(model, pair, args.margin)
    lam = pair.eigenvalue
    return {
        "family": pair.family,
        "extent": pair.extent,
        "eigenvalue": str(lam) if isinstance(lam, Fraction) else [lam.real, lam.imag],
        "residual": str(res) if isinstance(res, Fraction) else res,
        "support": len(pair.vec),
    }


def cmd_gs_scan(args):
    return spectral.gs_region_scan(parse_weight(args.weight), _grid(args.r_grid), _grid(args.s_grid), args.extent)


def _random_vector(rng, model, size, terms):
    verts = model.truncate(size)
    picks = rng.sample(verts, min(terms, len(verts)))
    return SparseVector(model, {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in picks})


def cmd_oracle_check(args):
    model = graph.parse_model(args.model)
    rng = random.Random(args.seed)
    worst = Fraction(0)
    for _ in range(args.trials):
        vec = _random_vector(rng, model, args.size, args.terms)
        worst = max(worst, oracle.equivalence_check(model, vec, args.n, args.size))
    return {"model": model.to_json(), "n": args.n, "trials": args.trials, "seed": args.seed, "max_deviation": str(worst)}


def cmd_nec_sum(args):
    anchor = tuple(int(t) for t in args.anchor.split(","))
    value = criteria.necessary_sum(parse_weight(args.weight), to_scalar(args.p), args.n, anchor)
    return {"n": args.n, "p": args.p, "anchor": list(anchor), "value": str(value) if isinstance(value, Fraction) else value}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")

    p = _Parser(prog="lattice-shifts", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    sp = add("apply", cmd_apply, "Apply the backward shift (Bf)(v) = sum of f over the children of v.")
    sp.add_argument("--model", required=True)
    sp.add_argument("--vec", required=True)

    sp = add("power", cmd_power, "B^n f by iteration or by the binomial closed form B^n e_{i,j} = sum_l C(n,l) e_{i-l,j-n+l}.")
    sp.add_argument("--model", required=True)
    sp.add_argument("--vec", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--method", choices=["iterate", "closed"], default="closed")

    sp = add(
        "rightinv",
        cmd_rightinv,
        "Right inverse R_n with B^n R_n f = f: layer recursion on strips, geometric diagonal basis on the quadrant.",
    )
    sp.add_argument("--model", required=True)
    sp.add_argument("--vec")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--params", help="comma-separated diagonal basis parameters a_0,a_1,...")
    sp.add_argument("--table", action="store_true", help="dump the strip coefficient table alpha_{i,s} as CSV")

    sp = add("hc-assemble", cmd_hc_assemble, "Assemble f = sum_k R_{n_k} g_k as in the Hypercyclicity Criterion.")
    sp.add_argument("--model", required=True)
    sp.add_argument("--term", nargs=2, action="append", metavar=("N", "VEC"))
    sp.add_argument("--params")
    sp.add_argument("--weight", help="report ||B^{n_k} f - g_k|| in this weighted space")
    sp.add_argument("--p", default="2", help="exponent of l^p, or 'inf' for c_0")

    sp = add(
        "check",
        cmd_check,
        "Finite-horizon weight criteria: strip n^{m-i}|mu| decay, quadrant limsup |mu|^{1/(i+j)} < 2, "
        "lower bound |mu| >= c 2^{i+j}, golden-ratio test for the skip graph, structural obstruction, boundedness.",
    )
    sp.add_argument(
        "--criterion",
        required=True,
        choices=["strip", "strip-bilateral", "quadrant-mixing", "quadrant-obstruction", "skip", "structural", "bounded"],
    )
    sp.add_argument("--weight", default="const:1")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--model")
    sp.add_argument("--horizon", type=int, required=True)
    sp.add_argument("--window", type=int, default=criteria.DEFAULT_WINDOW)
    sp.add_argument("--length", type=int, default=criteria.DEFAULT_LENGTH, help="witness length with eps_k = 2^-k")
    sp.add_argument("--margin", type=float, default=criteria.DEFAULT_MARGIN)

    sp = add("eigen", cmd_eigen, "Eigenvectors f_{r,s} (lambda = s(r^2+r)) on the quadrant or f_s (lambda = s(1+s)) on the skip graph.")
    sp.add_argument("--family", choices=["quadrant", "skip"], required=True)
    sp.add_argument("--r")
    sp.add_argument("--s", required=True)
    sp.add_argument("--extent", type=int, required=True)
    sp.add_argument("--margin", type=int, default=1)

    sp = add("gs-scan", cmd_gs_scan, "Godefroy-Shapiro scan: eigenvalues of f_{r,s} inside and outside the unit circle.")
    sp.add_argument("--weight", required=True)
    sp.add_argument("--r-grid", required=True)
    sp.add_argument("--s-grid", required=True)
    sp.add_argument("--extent", type=int, default=60)

    sp = add("oracle-check", cmd_oracle_check, "Compare closed-form powers with dense truncated-matrix powers on random vectors.")
    sp.add_argument("--model", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--size", type=int, default=6)
    sp.add_argument("--terms", type=int, default=4)
    sp.add_argument("--trials", type=int, default=20)

    sp = add("nec-sum", cmd_nec_sum, "Necessary-condition sum sum_l C(n,l)^{p'} / |mu_{i+l,j+n-l}|^{p'} on the quadrant.")
    sp.add_argument("--weight", required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--anchor", default="0,0")
    return p


def render(result, fmt: str) -> str:
    if isinstance(result, SparseVector):
        return _vector_csv(result) if fmt == "csv" else json.dumps(_vector_payload(result), sort_keys=True) + "\n"
    if isinstance(result, rightinv.AlphaTable):
        return result.to_csv()
    if isinstance(result, criteria.CriterionReport):
        return result.trace_csv() if fmt == "csv" else result.dumps() + "\n"
    if isinstance(result, spectral.RegionReport):
        return result.to_csv() if fmt == "csv" else json.dumps(result.to_json(), sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(result))
        w.writerow([json.dumps(v) if isinstance(v, (list, dict)) else v for v in result.values()])
        return buf.getvalue()
    return json.dumps(result, sort_keys=True, default=str) + "\n"


def _fail(kind, err, code):
    sys.stderr.write(json.dumps({"error": kind, "message": str(err)}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
        text = render(result, args.format)
    except UsageError as err:
        return _fail("usage", err, 1)
    except (DomainError, ZeroDivisionError) as err:
        return _fail("domain", err, 2)
    except (ValueError, TypeError, OSError) as err:
        return _fail("usage", err, 1)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
