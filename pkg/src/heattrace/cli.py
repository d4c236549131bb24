"""Command-line interface.

Subcommands::

    heattrace coeffs      --space SPEC --n-max N [--format json|csv] ...
    heattrace closed-form --family SPEC | --model-file PATH ...
    heattrace growth      --space SPEC [--n-max N] [--epsilon E] ...
    heattrace verify      --suite NAME

Space specs combine atoms with combinators, mirroring how the underlying
spaces combine::

    sphere:MBAR  cp:MBAR  hp:MBAR  op2
    hyperbolic-odd:MBAR  su-star:MBAR  e6-f4  complex-group:A2
    dual(SPEC)   scale(SPEC, C2)   product(SPEC, SPEC, ...)

Exact values are serialized as "num/den" strings plus a pi power so nothing
is lost in transit; ``--decimal D`` adds rounded convenience values.  Output
is byte-for-byte deterministic for fixed inputs once ``--no-timestamp`` is
passed.  Exit codes: 0 success, 1 verification failure, 2 usage error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction

from . import plancherel, rank1, series, verify
from .errors import HeatTraceError, InvariantViolation
from .growth import growth_report

SCHEMA_VERSION = "1.0"

_RANK1_ATOMS = {
    "sphere": "sphere",
    "cp": "complex_projective",
    "hp": "quaternionic_projective",
    "op2": "cayley_plane",
}
_PLANCHEREL_ATOMS = {"hyperbolic-odd", "su-star", "e6-f4", "complex-group"}


# --- space-spec parsing -------------------------------------------------------


class SpecError(ValueError):
    pass


def parse_space(text: str) -> dict:
    """Parse a space spec into a tree of dicts (see module docstring)."""
    tokens = _tokenize(text)
    tree, pos = _parse_expr(tokens, 0)
    if pos != len(tokens):
        raise SpecError(f"trailing input in space spec: {tokens[pos:]}")
    return tree


def _tokenize(text: str) -> list[str]:
    out = []
    cur = ""
    for ch in text:
        if ch in "(),":
            if cur.strip():
                out.append(cur.strip())
            cur = ""
            out.append(ch)
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def _parse_expr(tokens: list[str], pos: int):
    if pos >= len(tokens):
        raise SpecError("unexpected end of space spec")
    head = tokens[pos]
    if pos + 1 < len(tokens) and tokens[pos + 1] == "(":
        if head not in ("dual", "scale", "product"):
            raise SpecError(f"unknown combinator {head!r}")
        args = []
        pos += 2
        while True:
            child, pos = _parse_expr(tokens, pos)
            args.append(child)
            if pos >= len(tokens):
                raise SpecError("unclosed combinator")
            if tokens[pos] == ",":
                pos += 1
                continue
            if tokens[pos] == ")":
                pos += 1
                break
            raise SpecError(f"expected ',' or ')' near {tokens[pos]!r}")
        if head == "dual":
            if len(args) != 1:
                raise SpecError("dual(...) takes exactly one space")
            return {"kind": "dual", "child": args[0]}, pos
        if head == "scale":
            if len(args) != 2 or args[1].get("kind") != "atom_or_number":
                raise SpecError("scale(SPEC, C2) takes a space and a positive rational")
            c2 = Fraction(args[1]["text"])
            if c2 <= 0:
                raise SpecError("scale factor must be positive")
            return {"kind": "scale", "c2": str(c2), "child": args[0]}, pos
        if len(args) < 2:
            raise SpecError("product(...) takes at least two spaces")
        return {"kind": "product", "children": args}, pos
    pos += 1
    return _atom_or_number(head), pos


def _atom_or_number(token: str) -> dict:
    name, _, param = token.partition(":")
    name = name.strip()
    param = param.strip()
    if name in _RANK1_ATOMS or name in _PLANCHEREL_ATOMS:
        if name in ("op2", "e6-f4"):
            if param:
                raise SpecError(f"{name} takes no parameter")
            return {"kind": "atom", "family": name, "param": None}
        if not param:
            raise SpecError(f"{name} needs a parameter, e.g. {name}:2")
        if name == "complex-group":
            if not (param[:1].isalpha() and param[1:].isdigit()):
                raise SpecError(f"complex-group parameter must look like 'A2', got {param!r}")
        elif not param.isdigit():
            raise SpecError(f"{name} parameter must be a positive integer, got {param!r}")
        return {"kind": "atom", "family": name, "param": param}
    # bare rational (only valid as the scale argument)
    try:
        Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"unknown space or value {token!r}") from None
    return {"kind": "atom_or_number", "text": token}


def _rank1_worker(args):
    family, mbar, n = args
    model = rank1.SpaceModel(family, mbar)
    return n, rank1.coefficient(model, n)


def _build_rank1_series(family: str, mbar: int, n_max: int, fill: str | None,
                        oracle_precision: int, jobs: int) -> series.HeatSeries:
    if jobs <= 1 or n_max < 8:
        return rank1.rank1_series(rank1.SpaceModel(family, mbar), n_max, fill,
                                  oracle_precision)
    model = rank1.SpaceModel(family, mbar)
    base = rank1.rank1_series(model, min(model.threshold, n_max), fill, oracle_precision)
    coeffs = list(base.coeffs) + [Fraction(0)] * (n_max - base.n_max)
    flags = list(base.validity) + [series.EXACT] * (n_max - base.n_max)
    work = [(family, mbar, n) for n in range(model.threshold + 1, n_max + 1)]
    if work:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for n, value in pool.map(_rank1_worker, work,
                                     chunksize=max(1, len(work) // (4 * jobs))):
                coeffs[n] = value
    return series.HeatSeries(coeffs[: n_max + 1], flags[: n_max + 1], base.provenance)


def evaluate_space(tree: dict, n_max: int, fill: str | None = None,
                   oracle_precision: int = 30, jobs: int = 1) -> series.HeatSeries:
    """Evaluate a parsed space tree into a coefficient series."""
    kind = tree["kind"]
    if kind == "atom":
        family = tree["family"]
        if family in _RANK1_ATOMS:
            mbar = 2 if family == "op2" else int(tree["param"])
            return _build_rank1_series(_RANK1_ATOMS[family], mbar, n_max, fill,
                                       oracle_precision, jobs)
        pfam = family.replace("-", "_")
        param = tree["param"]
        model = plancherel.build_family(pfam, int(param) if pfam in
                                        ("hyperbolic_odd", "su_star") else param)
        return plancherel.to_series(plancherel.closed_form(model), n_max)
    if kind == "dual":
        return series.dualize(evaluate_space(tree["child"], n_max, fill,
                                             oracle_precision, jobs))
    if kind == "scale":
        return series.rescale(
            evaluate_space(tree["child"], n_max, fill, oracle_precision, jobs),
            Fraction(tree["c2"]),
        )
    if kind == "product":
        parts = [evaluate_space(c, n_max, fill, oracle_precision, jobs)
                 for c in tree["children"]]
        out = parts[0]
        for p in parts[1:]:
            out = series.product(out, p)
        return out
    raise SpecError(f"cannot evaluate node kind {kind!r}")


def _normalization(tree: dict) -> dict:
    scale = Fraction(1)
    node = tree
    while node["kind"] == "scale":
        scale *= Fraction(node["c2"])
        node = node["child"]
    if node["kind"] == "dual":
        inner = _normalization(node["child"])
        inner["scale"] = str(Fraction(inner["scale"]) * scale)
        return inner
    if node["kind"] != "atom":
        return {"label": "composite", "scale": str(scale)}
    family = node["family"]
    if family == "sphere":
        label = "unit_curvature"
    elif family in _PLANCHEREL_ATOMS:
        label = "killing"
    else:
        label = "custom"
    return {"label": label, "scale": str(scale)}


# --- documents ----------------------------------------------------------------


def _frac_fields(value: Fraction, pi_power: int = 0) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator), "pi_power": pi_power}


def _decimal(value: Fraction, pi_power: int, digits: int) -> str:
    import mpmath as mp

    with mp.workdps(digits + 10):
        x = mp.mpf(value.numerator) / value.denominator * mp.pi ** pi_power
        return mp.nstr(x, digits)


def coefficients_document(spec: str, tree: dict, s: series.HeatSeries,
                          decimal: int | None, timestamp: bool) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "coefficients",
        "space": {"spec": spec, "tree": tree},
        "normalization": _normalization(tree),
        "coefficients": [],
        "provenance": [s.provenance],
    }
    for n, (value, flag) in enumerate(zip(s.coeffs, s.validity)):
        entry = {"n": n, **_frac_fields(value), "validity": flag}
        if decimal is not None:
            entry["decimal"] = _decimal(value, 0, decimal)
        doc["coefficients"].append(entry)
    if timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return doc


def parse_document(text: str) -> tuple[dict, series.HeatSeries]:
    """Inverse of the JSON serialization; exact values round-trip unchanged."""
    doc = json.loads(text)
    coeffs = []
    flags = []
    for entry in doc["coefficients"]:
        if int(entry["pi_power"]) != 0:
            raise ValueError("normalized coefficient documents carry pi_power 0")
        coeffs.append(Fraction(int(entry["num"]), int(entry["den"])))
        flags.append(entry["validity"])
    prov = doc.get("provenance") or [""]
    return doc, series.HeatSeries(coeffs, flags, prov[0])


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def render_csv(s: series.HeatSeries) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "num", "den", "pi_power", "validity"])
    for n, (value, flag) in enumerate(zip(s.coeffs, s.validity)):
        writer.writerow([n, value.numerator, value.denominator, 0, flag])
    return buf.getvalue()


# --- subcommands ----------------------------------------------------------------


def cmd_coeffs(args) -> int:
    if args.n_max > args.n_max_limit:
        raise SpecError(f"n_max {args.n_max} exceeds the limit {args.n_max_limit} "
                        "(raise it with --n-max-limit)")
    tree = parse_space(args.space)
    s = evaluate_space(tree, args.n_max, "oracle" if args.oracle_fill else None,
                       args.oracle_precision, args.jobs)
    if args.format == "csv":
        args.out.write(render_csv(s))
    else:
        doc = coefficients_document(args.space, tree, s, args.decimal,
                                    not args.no_timestamp)
        args.out.write(render_json(doc))
    return 0


def cmd_closed_form(args) -> int:
    if args.model_file:
        model = plancherel.load_model_file(args.model_file)
    else:
        tree = parse_space(args.family)
        if tree["kind"] != "atom" or tree["family"] not in _PLANCHEREL_ATOMS:
            raise SpecError("closed-form expects a polynomial-Plancherel family atom "
                            "(hyperbolic-odd:M, su-star:M, e6-f4, complex-group:XN)")
        pfam = tree["family"].replace("-", "_")
        param = tree["param"]
        model = plancherel.build_family(pfam, int(param) if pfam in
                                        ("hyperbolic_odd", "su_star") else param)
    form = plancherel.closed_form(model)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "closed_form",
        "family": model.label,
        "m": model.m,
        "r": model.r,
        "rho_sq": f"{model.rho_sq.numerator}/{model.rho_sq.denominator}",
        "kappa": _frac_fields(form.kappa),
        "poly": [{"h": h, **_frac_fields(c)} for h, c in enumerate(form.poly)],
        "degree": form.degree,
        "degree_bound": form.degree_bound,
        "leading_t_exponent": str(form.leading_t_exponent),
        "provenance": list(model.notes),
    }
    if args.decimal is not None:
        doc["kappa"]["decimal"] = _decimal(form.kappa, 0, args.decimal)
        for entry, c in zip(doc["poly"], form.poly):
            entry["decimal"] = _decimal(c, 0, args.decimal)
    if not args.no_timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    args.out.write(render_json(doc))
    return 0


def cmd_growth(args) -> int:
    tree = parse_space(args.space)
    s = evaluate_space(tree, args.n_max, jobs=args.jobs)
    report = growth_report(s, n_min=args.n_min, epsilons=tuple(args.epsilon))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "growth",
        "space": {"spec": args.space, "tree": tree},
        "n_max": args.n_max,
        "growth": {
            "classification": report.classification,
            "C_estimate": report.C_estimate,
            "epsilon_band": [{"epsilon": e, "N": n} for e, n in report.epsilon_band],
            "C1_min": report.C1_min,
        },
        "provenance": [s.provenance],
    }
    if not args.no_timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    args.out.write(render_json(doc))
    return 0


def cmd_verify(args) -> int:
    results = verify.run_suite(args.suite)
    failed = 0
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        args.out.write(f"[{status}] {res.name}: {res.detail}\n")
        failed += 0 if res.ok else 1
    args.out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if failed == 0 else 1


# --- entry point ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heattrace",
        description="Exact heat-trace coefficients of rank-one symmetric spaces "
                    "and polynomial-Plancherel families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--no-timestamp", action="store_true",
                       help="omit the generated_at field (deterministic output)")
        p.add_argument("--decimal", type=int, default=None, metavar="D",
                       help="add decimal renderings with D significant digits")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel workers for per-index computation")
        p.add_argument("-o", "--output", dest="out", type=argparse.FileType("w"),
                       default=sys.stdout, help="write to a file instead of stdout")

    p = sub.add_parser("coeffs", help="coefficient table of a space spec")
    p.add_argument("--space", required=True, help="space spec, e.g. 'sphere:1' or "
                   "'product(hyperbolic-odd:1, dual(hyperbolic-odd:1))'")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-max-limit", type=int, default=1000)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--oracle-fill", action="store_true",
                   help="fill below-threshold indices from the spectral oracle "
                        "(spheres only; flagged approximate)")
    p.add_argument("--oracle-precision", type=int, default=30)
    common(p)
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("closed-form", help="exponential-times-polynomial trace form")
    p.add_argument("--family", help="family atom, e.g. hyperbolic-odd:2")
    p.add_argument("--model-file", help="JSON model description (see README)")
    common(p)
    p.set_defaults(fn=cmd_closed_form)

    p = sub.add_parser("growth", help="growth diagnostics of a space spec")
    p.add_argument("--space", required=True)
    p.add_argument("--n-max", type=int, default=300)
    p.add_argument("--n-min", type=int, default=50)
    p.add_argument("--epsilon", type=float, action="append", default=None)
    common(p)
    p.set_defaults(fn=cmd_growth)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, help=f"one of: {', '.join(verify.suite_names())}")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "epsilon", None) is None and args.command == "growth":
        args.epsilon = [0.2]
    try:
        return args.fn(args)
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except (HeatTraceError, SpecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
