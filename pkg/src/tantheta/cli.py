"""Command line front end: ``bound``, ``witness``, ``verify``, ``sweep``.

Exit codes: 0 ok, 1 bound violation, 2 domain error, 3 IO/schema error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Optional

import jsonschema
import numpy as np

from . import blockmodel
from .bounds import apriori_tan_theta, best_bound, kappa_tan, xi
from .errors import DomainError, TanThetaError
from .geometry import (
    BoundKind,
    Disposition,
    centered_geometry,
    make_geometry,
    validity,
)
from .witness import build_remdel_example, build_xi_witness

EXIT_OK, EXIT_VIOLATION, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3

_matrix = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_vector = {"type": "array", "items": {"type": "number"}}

BLOCK_SCHEMA = {
    "type": "object",
    "required": ["a0", "a1", "b", "sigma0", "sigma1"],
    "properties": {
        "a0": _matrix,
        "a1": _matrix,
        "b": _matrix,
        "sigma0": _vector,
        "sigma1": _vector,
        "gap": {
            "type": "object",
            "required": ["lo", "hi", "d"],
            "properties": {"lo": {"type": "number"}, "hi": {"type": "number"}, "d": {"type": "number"}},
        },
        "disposition": {"enum": [d.value for d in Disposition]},
    },
}
INPUT_SCHEMA = {"oneOf": [BLOCK_SCHEMA, {"type": "array", "items": BLOCK_SCHEMA}]}


class SchemaError(TanThetaError):
    pass


def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return None
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    return x


def dumps(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2, allow_nan=False) + "\n"


def block_from_json(obj: dict) -> blockmodel.BlockMatrix:
    try:
        jsonschema.validate(obj, BLOCK_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc
    disp = Disposition(obj.get("disposition", Disposition.IN_GAP.value))
    geometry = None
    if "gap" in obj:
        gp = obj["gap"]
        geometry = make_geometry(gp["lo"], gp["hi"], gp["d"])
    elif disp is Disposition.IN_GAP:
        raise SchemaError("in-gap instance requires a 'gap' object")
    try:
        a0, a1, b = (np.array(obj[k], dtype=float) for k in ("a0", "a1", "b"))
    except ValueError as exc:
        raise SchemaError(f"ragged matrix: {exc}") from exc
    m = blockmodel.BlockMatrix(a0, a1, b, tuple(obj["sigma0"]), tuple(obj["sigma1"]), geometry, disp)
    try:
        m.check_shapes()
    except TanThetaError as exc:
        raise SchemaError(str(exc)) from exc
    return m


def block_to_json(m: blockmodel.BlockMatrix) -> dict:
    out = {
        "a0": m.a0.tolist(),
        "a1": m.a1.tolist(),
        "b": m.b.tolist(),
        "sigma0": list(m.sigma0),
        "sigma1": list(m.sigma1),
        "disposition": m.disposition.value,
    }
    if m.geometry is not None:
        out["gap"] = {"lo": m.geometry.gap_lo, "hi": m.geometry.gap_hi, "d": m.geometry.d}
    return out


# -- commands ---------------------------------------------------------------

def cmd_bound(D: float, d: float, b: float, kinds=None, disposition=Disposition.IN_GAP,
              delta: Optional[float] = None) -> list[dict]:
    if not b >= 0:
        raise DomainError(f"b={b!r} must be non-negative")
    g = centered_geometry(D, d)
    values = best_bound(g, b, disposition, delta=delta, include_invalid=True)
    if kinds:
        wanted = {BoundKind(k) for k in kinds}
        values = [bv for bv in values if bv.kind in wanted]
    return [bv.as_dict() for bv in values]


def cmd_witness(D: float, d: float, b: float) -> dict:
    return build_xi_witness(D, d, b).as_dict()


def cmd_verify(instances) -> dict:
    certs = [blockmodel.certify_any(m) for m in instances]
    return {
        "instances": [c.as_dict() for c in certs],
        "summary": {
            "instances": len(certs),
            "violations": sum(c.violations for c in certs),
            "max_tightest_ratio": max((c.max_tightest_ratio for c in certs), default=0.0),
            "gap_contained": all(c.gap is None or c.gap.contained for c in certs),
        },
    }


class _InGapMaker:
    def __init__(self, n0, n1, g, vnorm):
        self.args = (n0, n1, g, vnorm)

    def __call__(self, seed):
        return blockmodel.random_instance(*self.args, seed)


class _SubordinatedMaker:
    def __init__(self, n0, n1, d, vnorm):
        self.args = (n0, n1, d, vnorm)

    def __call__(self, seed):
        return blockmodel.random_subordinated(*self.args, seed)


def random_instances(n0, n1, D, d, vnorm, seed, trials, disposition=Disposition.IN_GAP):
    seeds = blockmodel.trial_seeds(seed, trials)
    if disposition is Disposition.SUBORDINATED:
        make = _SubordinatedMaker(n0, n1, d, vnorm)
    else:
        make = _InGapMaker(n0, n1, centered_geometry(D, d), vnorm)
    return [make(s) for s in seeds]


SWEEP_COLUMNS = ["b", "sqrt_xi", "apriori", "kappa_tan", "max_achieved_tan",
                 "delta_remdel", "aposteriori"]


def cmd_sweep(D: float, d: float, bmax: float, steps: int, trials: int, seed: int) -> list[dict]:
    """Bound curves on ``b in [0, bmax]`` with the largest tan(theta) seen over
    the witness and ``trials`` random instances per row. Inapplicable cells
    are ``None``."""
    g = centered_geometry(D, d)
    if not bmax >= 0 or not bmax * bmax < d * D:
        raise DomainError(f"bmax={bmax!r} violates 0 <= bmax < sqrt(d*D) = {math.sqrt(d * D)!r}")
    if steps < 2:
        raise DomainError("steps must be at least 2")
    rows = []
    row_seeds = blockmodel.trial_seeds(seed, steps)
    for b, rs in zip(np.linspace(0.0, bmax, steps), row_seeds):
        b = float(b)
        achieved = 0.0
        if b > 0:
            achieved = build_xi_witness(D, d, b).tan_theta
        rng = np.random.default_rng(rs)
        for ts in rs.spawn(trials):
            n0 = int(rng.integers(1, 4))
            n1 = int(rng.integers(2, 7))
            cert = blockmodel.certify(blockmodel.random_instance(n0, n1, g, b, ts))
            achieved = max([achieved] + [r.tan_theta for r in cert.reports])
        row = {c: None for c in SWEEP_COLUMNS}
        row["b"] = b
        row["sqrt_xi"] = math.sqrt(xi(D, d, b))
        row["max_achieved_tan"] = achieved
        if validity(BoundKind.APRIORI_TAN_THETA, g, b):
            row["apriori"] = apriori_tan_theta(d, b)
            rem = build_remdel_example(d, b)
            row["delta_remdel"] = rem.delta
            row["aposteriori"] = b / rem.delta
        if validity(BoundKind.KAPPA, g, b):
            row["kappa_tan"] = kappa_tan(D, d, b)
        rows.append(row)
    return rows


def rows_to_csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if row.get(c) is None else repr(float(row[c])) for c in columns])
    return buf.getvalue()


# -- argument parsing ---------------------------------------------------------

def _default_seed() -> int:
    raw = os.environ.get("SAC_SEED")
    return int(raw) if raw else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tantheta", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--format", choices=["json", "csv"], default=fmt, dest="output_format")
        sp.add_argument("--out", default=None, help="write to file instead of stdout")

    sp = sub.add_parser("bound", help="evaluate every bound at (D, d, b)")
    sp.add_argument("--D", type=float, required=True)
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--kinds", nargs="*", choices=[k.value for k in BoundKind])
    sp.add_argument("--disposition", choices=[Disposition.IN_GAP.value, Disposition.SUBORDINATED.value],
                    default=Disposition.IN_GAP.value)
    sp.add_argument("--delta", type=float, default=None, help="enables the a posteriori bound")
    common(sp)

    sp = sub.add_parser("witness", help="build the extremal 3x3 matrix")
    sp.add_argument("--D", type=float, required=True)
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--b", type=float, required=True)
    common(sp)

    sp = sub.add_parser("verify", help="certify bounds on given or random block matrices")
    sp.add_argument("input", nargs="?", help="JSON file with one instance or a list")
    sp.add_argument("--random", action="store_true")
    sp.add_argument("--n0", type=int, default=1)
    sp.add_argument("--n1", type=int, default=2)
    sp.add_argument("--D", type=float)
    sp.add_argument("--d", type=float)
    sp.add_argument("--vnorm", type=float)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--disposition", choices=[Disposition.IN_GAP.value, Disposition.SUBORDINATED.value],
                    default=Disposition.IN_GAP.value)
    common(sp)

    sp = sub.add_parser("sweep", help="bound curves and achieved angles as CSV")
    sp.add_argument("--D", type=float, required=True)
    sp.add_argument("--d", type=float, required=True)
    sp.add_argument("--bmax", type=float, required=True)
    sp.add_argument("--steps", type=int, default=21)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=None)
    common(sp, fmt="csv")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_instances(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        jsonschema.validate(obj, INPUT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message) from exc
    objs = obj if isinstance(obj, list) else [obj]
    return [block_from_json(o) for o in objs]


def _verify_csv(payload) -> str:
    rows = []
    for i, inst in enumerate(payload["instances"]):
        for r in inst["reports"]:
            rows.append({"instance": i, "eigenvalue": r["eigenvalue"], "tan_theta": r["tan_theta"],
                         "all_satisfied": r["all_satisfied"], "tightest_ratio": r["tightest_ratio"]})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["instance", "eigenvalue", "tan_theta", "all_satisfied",
                                             "tightest_ratio"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


def _list_csv(rows) -> str:
    cols = sorted({k for r in rows for k in r})
    return rows_to_csv(
        [{k: v for k, v in r.items() if isinstance(v, (int, float)) and not isinstance(v, bool)} for r in rows],
        [c for c in cols if any(isinstance(r.get(c), (int, float)) and not isinstance(r.get(c), bool)
                                for r in rows)],
    )


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    seed = getattr(args, "seed", None)
    if seed is None:
        seed = _default_seed()
    try:
        if args.command == "bound":
            payload = cmd_bound(args.D, args.d, args.b, args.kinds, Disposition(args.disposition), args.delta)
            text = dumps(payload) if args.output_format == "json" else _list_csv(payload)
            _emit(text, args.out)
            return EXIT_OK
        if args.command == "witness":
            payload = cmd_witness(args.D, args.d, args.b)
            text = dumps(payload) if args.output_format == "json" else _list_csv([payload])
            _emit(text, args.out)
            return EXIT_OK
        if args.command == "verify":
            if args.random:
                missing = [k for k in ("D", "d", "vnorm") if getattr(args, k) is None]
                if missing:
                    parser.error(f"--random needs --{', --'.join(missing)}")
                D = args.D
                instances = random_instances(args.n0, args.n1, D, args.d, args.vnorm, seed, args.trials,
                                             Disposition(args.disposition))
            elif args.input:
                instances = _load_instances(args.input)
                for m in instances:
                    m.validate()
            else:
                parser.error("verify needs an input file or --random")
            payload = cmd_verify(instances)
            text = dumps(payload) if args.output_format == "json" else _verify_csv(payload)
            _emit(text, args.out)
            return EXIT_OK if payload["summary"]["violations"] == 0 else EXIT_VIOLATION
        if args.command == "sweep":
            rows = cmd_sweep(args.D, args.d, args.bmax, args.steps, args.trials, seed)
            text = rows_to_csv(rows, SWEEP_COLUMNS) if args.output_format == "csv" else dumps(rows)
            _emit(text, args.out)
            return EXIT_OK
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except TanThetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_IO


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
