"""Command-line front end.

Every subcommand prints one record to stdout as text (default), CSV or JSON.
Exit status is 0 on success and 2 on usage errors.  Invalid models and model
files exit with 3; requests the evidence layer refuses, such as a 0/0 ratio,
exit with 4.  Diagnostics go to stderr, one line each.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from collections.abc import Sequence
from typing import Any

from . import __version__
from .core import (
    DiscreteModel,
    LikelihoodFunction,
    Sample,
    compare,
    iid_likelihood,
    likelihood,
    likelihood_ratio,
    max_likelihood_points,
)
from .errors import EvidenceError, ModelError, UnknownParameter
from .misleading import STYLES, ComparisonSpec, exact_misleading_probability, monte_carlo_misleading
from .models import (
    BirnbaumConfig,
    UrnComposition,
    binomial_model,
    birnbaum_known_mu_model,
    birnbaum_model,
    rain_model,
    surething_model,
    urn1_model,
    urn2_model,
)
from .modelspec import ModelSpecError, check, read_text, to_model
from .nuisance import NuisanceSpec, derived_statistic_model, distinct_count_statistic, marginalize, profile

SCHEMA_VERSION = 1
PROG = "likelihood-evidence"
BUILTIN_NAMES = ("rain", "urn1", "urn2", "birnbaum", "birnbaum-known-mu", "binomial", "sure-thing")

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DOMAIN = 0, 2, 3, 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_model_args(p: argparse.ArgumentParser, prefix: str = "", required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    dest = prefix.replace("-", "_")
    which = "model of --b, for a cross-model comparison: " if prefix else ""
    src.add_argument(f"--{prefix}file", dest=f"{dest}file", metavar="F", help=f"{which}model file (.lmod)")
    src.add_argument(f"--{prefix}builtin", dest=f"{dest}builtin", metavar="NAME", choices=BUILTIN_NAMES,
                     help=f"{which}builtin model, one of " + ", ".join(BUILTIN_NAMES))


def _add_builtin_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("builtin model arguments")
    g.add_argument("--shared-count", type=int, metavar="N", help="urn2: balls of the shared color (default 100)")
    g.add_argument("--other-counts", metavar="SPEC",
                   help="urn2: other color counts, e.g. 49x100,50x100 (default)")
    g.add_argument("--mu-window", metavar="LO:HI", help="birnbaum: inclusive range of mu (default +-(1e10 - 1))")
    g.add_argument("--mu", type=int, metavar="M", default=17, help="birnbaum-known-mu: the known mean (default 17)")
    g.add_argument("--coin-n", type=int, metavar="N", help="binomial: number of tosses")
    g.add_argument("--p-grid", metavar="P1,P2,...", help="binomial: grid of head probabilities")
    g.add_argument("--sequence", metavar="HT...", help="sure-thing: the observed toss sequence")


def _add_obs_args(p: argparse.ArgumentParser, prefix: str = "", required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    dest = prefix.replace("-", "_")
    which = "under the --b model: " if prefix else ""
    g.add_argument(f"--{prefix}obs", dest=f"{dest}obs", metavar="V", help=f"{which}a single observed outcome")
    g.add_argument(f"--{prefix}sample", dest=f"{dest}sample", metavar="V1,V2,...",
                   help=f"{which}an i.i.d. sample of outcomes")


def _add_format(p: argparse.ArgumentParser, choices=("text", "csv", "json"), default="text") -> None:
    p.add_argument("--format", choices=choices, default=default, help=f"output format (default {default})")


def _builtin(name: str, args: argparse.Namespace) -> DiscreteModel:
    if name == "rain":
        return rain_model()
    if name == "urn1":
        return urn1_model()
    if name == "urn2":
        if args.shared_count is None and args.other_counts is None:
            return urn2_model()
        counts: list[int] = []
        if args.other_counts:
            for part in _csv_list(args.other_counts):
                count, _, times = part.partition("x")
                try:
                    counts.extend([int(count)] * (int(times) if times else 1))
                except ValueError:
                    raise UsageError(f"bad --other-counts entry {part!r}") from None
        default = UrnComposition()
        others = default.other_colors if not counts else tuple(
            (f"color{i:03d}", c) for i, c in enumerate(counts, start=1)
        )
        return urn2_model(UrnComposition(args.shared_count or default.shared_count, others))
    if name == "birnbaum":
        if args.mu_window:
            lo, sep, hi = args.mu_window.partition(":")
            try:
                window = range(int(lo), int(hi) + 1)
            except ValueError:
                raise UsageError(f"bad --mu-window {args.mu_window!r}; expected LO:HI") from None
            return birnbaum_model(BirnbaumConfig(mu_values=window))
        return birnbaum_model()
    if name == "birnbaum-known-mu":
        return birnbaum_known_mu_model(args.mu)
    if name == "binomial":
        if args.coin_n is None or args.p_grid is None:
            raise UsageError("binomial needs --coin-n and --p-grid")
        try:
            grid = [float(v) for v in _csv_list(args.p_grid)]
        except ValueError:
            raise UsageError(f"bad --p-grid {args.p_grid!r}") from None
        return binomial_model(args.coin_n, grid)
    if name == "sure-thing":
        if not args.sequence:
            raise UsageError("sure-thing needs --sequence")
        return surething_model(args.sequence)
    raise UsageError(f"unknown builtin {name!r}")


def _model(args: argparse.Namespace, prefix: str = "") -> DiscreteModel:
    path = getattr(args, f"{prefix}file")
    if path:
        text = read_text(path)
        doc, diags = check(text)
        if doc is None:
            raise ModelSpecError(diags)
        return to_model(doc)
    return _builtin(getattr(args, f"{prefix}builtin"), args)


def _observation_text(args: argparse.Namespace, prefix: str = "") -> tuple[str, list[str]]:
    obs = getattr(args, f"{prefix}obs")
    if obs is not None:
        return "obs", [obs]
    return "sample", _csv_list(getattr(args, f"{prefix}sample"))


def _likelihood(model: DiscreteModel, args: argparse.Namespace, prefix: str = "") -> tuple[LikelihoodFunction, list]:
    kind, tokens = _observation_text(args, prefix)
    values = [model.outcomes.parse(t) for t in tokens]
    if not values:
        raise UsageError("empty sample")
    if kind == "obs":
        return likelihood(model, values[0]), values
    return iid_likelihood(model, Sample(values)), values


def _point(model: DiscreteModel, text: str):
    try:
        return model.space.parse_point(text)
    except UnknownParameter as e:
        raise UsageError(str(e)) from None


def _dims(model: DiscreteModel, text: str) -> list[str]:
    dims = _csv_list(text)
    for d in dims:
        if d not in model.space.names:
            raise UsageError(f"unknown dimension {d!r}; have {', '.join(model.space.names)}")
    return dims


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _jsonable(v: Any) -> Any:
    if isinstance(v, float) and not math.isfinite(v):
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _text(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_text(x) for x in v)
    return str(v)


def _table_payload(L: LikelihoodFunction, **meta) -> dict[str, Any]:
    rows = [list(point.values) + [value] for point, value in L.items()]
    return dict(
        meta,
        scale_note=L.scale_note,
        zero_elsewhere=not L.complete,
        columns=list(L.space.names) + ["likelihood"],
        rows=rows,
    )


def render(record: dict[str, Any], fmt: str) -> str:
    """Serialize an output record; identical records give identical text."""
    payload = record["payload"]
    if fmt == "json":
        return json.dumps(_jsonable(record), indent=2, ensure_ascii=False) + "\n"
    table = "rows" in payload
    scalars = [(k, v) for k, v in payload.items() if k not in ("columns", "rows")]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if table:
            w.writerow(payload["columns"])
            for row in payload["rows"]:
                w.writerow([_text(v) for v in row])
        else:
            w.writerow(["key", "value"])
            for k, v in scalars:
                w.writerow([k, _text(v)])
        return buf.getvalue()
    lines = [f"{k}={_text(v)}" for k, v in scalars]
    if table:
        lines.append("\t".join(payload["columns"]))
        lines.extend("\t".join(_text(v) for v in row) for row in payload["rows"])
    return "\n".join(lines) + "\n"


def _record(command: str, payload: dict[str, Any]) -> dict[str, Any]:
    return {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_validate(args):
    text = read_text(args.path)
    doc, diags = check(text)
    for d in diags:
        print(str(d), file=sys.stderr)
    if doc is None:
        return None, EXIT_INVALID
    model = to_model(doc)
    payload = {
        "file": args.path,
        "model": doc.name,
        "dimensions": list(model.space.names),
        "parameter_points": model.space.size,
        "outcomes": len(model.outcomes),
        "warnings": len(doc.warnings),
    }
    return _record("validate", payload), EXIT_OK


def cmd_likelihood(args, command="likelihood"):
    model = _model(args)
    L, values = _likelihood(model, args)
    return _record(command, _table_payload(L, model=model.name, observation=values)), EXIT_OK


def cmd_ratio(args):
    model = _model(args)
    L, values = _likelihood(model, args)
    a = _point(model, args.a)
    if args.b_file or args.b_builtin:
        other = _model(args, "b_")
        if args.b_obs is None and args.b_sample is None:
            raise UsageError("--b-builtin/--b-file need --b-obs or --b-sample")
        Lb, _ = _likelihood(other, args, "b_")
        b = _point(other, args.b)
        cmp = compare(L, a, Lb, b)
    else:
        cmp = likelihood_ratio(L, a, _point(model, args.b))
    payload = {
        "model": model.name,
        "observation": values,
        "a": str(cmp.point_a),
        "b": str(cmp.point_b),
        "likelihood_a": L[cmp.point_a],
        "likelihood_b": L[cmp.point_b],
        "ratio": cmp.ratio,
        "classification": cmp.classification.value,
    }
    return _record("ratio", payload), EXIT_OK


def cmd_mle(args):
    model = _model(args)
    L, values = _likelihood(model, args)
    points = sorted(max_likelihood_points(L), key=lambda p: model.space.sort_key(p.values))
    payload = {
        "model": model.name,
        "observation": values,
        "max_likelihood": L.scale * L.max_raw,
        "count": len(points),
        "points": [str(p) for p in points],
    }
    return _record("mle", payload), EXIT_OK


def _nuisance_spec(model, args):
    dims = _dims(model, args.nuisance)
    if args.weights != "uniform":
        raise UsageError("only --weights uniform is supported on the command line")
    return NuisanceSpec.over(model.space, dims)


def cmd_marginalize(args):
    model = _model(args)
    L, values = _likelihood(model, args)
    M = marginalize(L, _nuisance_spec(model, args))
    return _record("marginalize", _table_payload(
        M, model=model.name, observation=values, nuisance=_csv_list(args.nuisance), weights=args.weights,
    )), EXIT_OK


def cmd_profile(args):
    model = _model(args)
    L, values = _likelihood(model, args)
    P = profile(L, NuisanceSpec.over(model.space, _dims(model, args.nuisance)))
    return _record("profile", _table_payload(
        P, model=model.name, observation=values, nuisance=_csv_list(args.nuisance),
    )), EXIT_OK


def cmd_derive_stat(args):
    model = _model(args)
    if args.nuisance:
        nuisance = _dims(model, args.nuisance)
    elif model.interest:
        nuisance = [d for d in model.space.names if d not in model.interest]
    else:
        raise UsageError(f"model {model.name!r} declares no interest dimensions; pass --nuisance")
    stat = distinct_count_statistic(binned=not args.exact_count)
    derived = derived_statistic_model(model, stat, args.n, NuisanceSpec.over(model.space, nuisance))
    rows = [list(point.values) + [label, p] for point, probs in derived.rows()
            for label, p in zip(derived.outcomes, probs)]
    payload = {
        "model": model.name,
        "statistic": stat.name,
        "n": args.n,
        "nuisance": nuisance,
        "method": derived.meta["method"],
        "columns": list(derived.space.names) + ["statistic", "probability"],
        "rows": rows,
    }
    return _record("derive-stat", payload), EXIT_OK


def cmd_misleading(args):
    model = _model(args)
    true_point = _point(model, args.true)
    interest = _dims(model, args.interest) if args.interest else None
    favored = None
    if args.favored:
        coords = {}
        for part in _csv_list(args.favored):
            name, _, token = part.partition("=")
            if name.strip() not in model.space.names:
                raise UsageError(f"unknown dimension {name.strip()!r} in --favored")
            axis = model.space.axis(name.strip())
            try:
                coords[name.strip()] = model.space._match_token(axis, token.strip())
            except UnknownParameter as e:
                raise UsageError(str(e)) from None
        favored = coords
    point_a = _point(model, args.a) if args.a else None
    point_b = _point(model, args.b) if args.b else None
    if args.style == "fixed-pair" and (point_a is None or point_b is None):
        raise UsageError("--style fixed-pair needs --a and --b")
    spec = ComparisonSpec(args.style, args.k, interest=interest, favored=favored, point_a=point_a, point_b=point_b)
    if args.method == "exact":
        report = exact_misleading_probability(model, true_point, spec, args.n)
    else:
        report = monte_carlo_misleading(model, true_point, spec, args.n, args.trials, args.seed)
    payload = {"model": model.name}
    payload.update(report.as_record())
    return _record("misleading", payload), EXIT_OK


def cmd_export(args):
    return cmd_likelihood(args, command="export")


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Likelihood functions, evidence ratios and misleading-evidence "
                    "probabilities for finite discrete models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="check a model file")
    p.add_argument("path", metavar="FILE", help="model file (.lmod)")
    _add_format(p)
    p.set_defaults(func=cmd_validate)

    def model_obs_parser(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        _add_model_args(sp)
        _add_builtin_args(sp)
        _add_obs_args(sp)
        return sp

    p = model_obs_parser("likelihood", "likelihood function of an observation or sample")
    _add_format(p)
    p.set_defaults(func=cmd_likelihood)

    p = model_obs_parser("ratio", "likelihood ratio between two parameter points")
    p.add_argument("--a", required=True, metavar="DIM=V,...", help="numerator point")
    p.add_argument("--b", required=True, metavar="DIM=V,...", help="denominator point")
    _add_model_args(p, prefix="b-", required=False)
    _add_obs_args(p, prefix="b-", required=False)
    _add_format(p)
    p.set_defaults(func=cmd_ratio)

    p = model_obs_parser("mle", "parameter points of maximum likelihood")
    _add_format(p)
    p.set_defaults(func=cmd_mle)

    p = model_obs_parser("marginalize", "sum the likelihood over nuisance dimensions")
    p.add_argument("--nuisance", required=True, metavar="DIM,...", help="dimensions to sum out")
    p.add_argument("--weights", default="uniform", choices=("uniform",), help="nuisance weights (default uniform)")
    _add_format(p)
    p.set_defaults(func=cmd_marginalize)

    p = model_obs_parser("profile", "maximize the likelihood over nuisance dimensions")
    p.add_argument("--nuisance", required=True, metavar="DIM,...", help="dimensions to maximize out")
    _add_format(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("derive-stat", help="model of a derived statistic free of nuisance dimensions")
    _add_model_args(p)
    _add_builtin_args(p)
    p.add_argument("--stat", required=True, choices=("distinct-count",), help="statistic")
    p.add_argument("--n", required=True, type=int, metavar="N", help="sample size")
    p.add_argument("--nuisance", metavar="DIM,...", help="nuisance dimensions (default: the model's)")
    p.add_argument("--exact-count", action="store_true", help="report every count 1..n instead of =1/>1")
    _add_format(p)
    p.set_defaults(func=cmd_derive_stat)

    p = sub.add_parser("misleading", help="probability of misleading evidence")
    p.add_argument("method", choices=("exact", "mc"), help="exact enumeration or Monte Carlo")
    _add_model_args(p)
    _add_builtin_args(p)
    p.add_argument("--true", required=True, metavar="DIM=V,...", help="true parameter point")
    p.add_argument("--style", required=True, choices=STYLES, help="comparison style")
    p.add_argument("--k", required=True, type=float, metavar="K", help="misleading threshold (> 1)")
    p.add_argument("--n", required=True, type=int, metavar="N", help="sample size")
    p.add_argument("--interest", metavar="DIM,...", help="interest dimensions (default: the model's)")
    p.add_argument("--favored", metavar="DIM=V,...", help="restrict the false side to these interest values")
    p.add_argument("--a", metavar="DIM=V,...", help="fixed-pair: the false hypothesis")
    p.add_argument("--b", metavar="DIM=V,...", help="fixed-pair: the comparison point")
    p.add_argument("--trials", type=int, default=100_000, metavar="T", help="mc: number of trials (default 100000)")
    p.add_argument("--seed", type=int, default=0, metavar="S", help="mc: random seed (default 0)")
    _add_format(p)
    p.set_defaults(func=cmd_misleading)

    p = model_obs_parser("export", "likelihood table as CSV or JSON")
    _add_format(p, choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_export)
    return parser


def _fail(code: str, message: str, exit_code: int) -> int:
    print(f"error: {code}: {' '.join(str(message).split())}", file=sys.stderr)
    return exit_code


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        record, code = args.func(args)
    except UsageError as e:
        return _fail("UsageError", str(e), EXIT_USAGE)
    except ModelSpecError as e:
        for d in e.diagnostics:
            print(str(d), file=sys.stderr)
        return EXIT_INVALID
    except ModelError as e:
        return _fail(getattr(e, "code", type(e).__name__), str(e), EXIT_INVALID)
    except EvidenceError as e:
        return _fail(e.code, str(e), EXIT_DOMAIN)
    except OSError as e:
        return _fail("IOError", str(e), EXIT_USAGE)
    if record is not None:
        sys.stdout.write(render(record, args.format))
    return code


def main() -> None:
    sys.exit(run())
