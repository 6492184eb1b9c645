"""Command-line front end.

Commands: complexity | coherent | weyl | nonrev | oracle-verify.
States are loaded from JSON files in the schema documented in
phase_space.state_from_dict.  All floats are rendered with 17
significant digits so results round-trip exactly, and identical inputs
with the same seed produce byte-identical output.

Exit codes: 0 success, 2 numeric-domain error, 3 validation error,
4 oracle non-convergence.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

import numpy as np

from .coherent import coherent_complexity, coherent_geodesic
from .complexity_core import relative_complex_structure, state_complexity
from .errors import (
    GaussianComplexityError,
    NumericDomainError,
    SchemaError,
    ValidationError,
)
from .modified_metrics import (
    VectorPotential,
    WeylFactor,
    lorentz_geodesic,
    nonreversible_cost,
    nonreversible_cost_profile,
    path_length,
    weyl_complexity,
)
from .phase_space import state_from_dict
from .variational_oracle import minimize_to_target

EXIT_OK = 0
EXIT_NUMERIC = 2
EXIT_VALIDATION = 3
EXIT_NO_CONVERGENCE = 4


def _render(obj) -> str:
    """Compact JSON with floats at 17 significant digits."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return f"{float(obj):.17g}"
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, np.ndarray):
        return _render(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render(x) for x in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_render(v)}" for k, v in obj.items()) + "}"
    raise TypeError(f"cannot render {type(obj)!r}")


def _emit(payload: dict, fmt: str):
    if fmt == "csv":
        print("key,value")
        for k, v in payload.items():
            text = _render(v)
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            print(f"{k},{text}")
    else:
        print(_render(payload))


def _fail(exc: Exception) -> dict:
    return {"error": f"{type(exc).__name__}: {exc}"}


def _load_state(path: str):
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read state file {path}: {exc}")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"state file {path} is not valid JSON: {exc}")
    return state_from_dict(data)


def _parse_pair(text: str, what: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ValidationError(f"{what} must be two comma-separated numbers, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ValidationError(f"{what} must be numeric, got {text!r}")


_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"^({_FLOAT})?\*?(r(?:\^(\d+))?)?$")


def _parse_poly(text: str) -> np.ndarray:
    """Coefficients (by power) of a polynomial in r like '0.5r' or 'r^2-0.1r'."""
    s = text.replace(" ", "")
    if not s:
        raise ValidationError("empty polynomial")
    coeffs = {}
    for part in re.split(r"(?<![eE])(?=[+-])", s):
        if not part:
            continue
        sign = 1.0
        if part[0] in "+-":
            sign = -1.0 if part[0] == "-" else 1.0
            part = part[1:]
        m = _TERM.match(part)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValidationError(f"cannot parse polynomial term {part!r}")
        coef = float(m.group(1)) if m.group(1) else 1.0
        power = 0 if m.group(2) is None else (int(m.group(3)) if m.group(3) else 1)
        coeffs[power] = coeffs.get(power, 0.0) + sign * coef
    out = np.zeros(max(coeffs) + 1)
    for power, c in coeffs.items():
        out[power] = c
    return out


def _parse_omega(spec: str) -> WeylFactor:
    """Weyl factor grammar: const:c | linear:beta | table:file.csv."""
    head, _, arg = spec.partition(":")
    if head == "const":
        try:
            return WeylFactor.constant(float(arg))
        except ValueError:
            raise ValidationError(f"const factor needs a number, got {arg!r}")
    if head == "linear":
        try:
            return WeylFactor.linear(float(arg))
        except ValueError:
            raise ValidationError(f"linear factor needs a number, got {arg!r}")
    if head == "table":
        try:
            rows = [
                line.split(",")
                for line in Path(arg).read_text().strip().splitlines()
                if line.strip()
            ]
        except OSError as exc:
            raise ValidationError(f"cannot read table file {arg}: {exc}")
        try:
            float(rows[0][0])
        except (ValueError, IndexError):
            rows = rows[1:]
        try:
            data = np.array([[float(c) for c in row[:2]] for row in rows])
        except (ValueError, IndexError):
            raise ValidationError(f"table file {arg} must hold r,omega rows")
        return WeylFactor.tabulated(data[:, 0], data[:, 1])
    raise ValidationError(
        f"unknown omega spec {spec!r}; use const:c, linear:beta or table:file.csv"
    )


def _parse_potential(spec: str) -> VectorPotential:
    """Potential grammar: none | const:f0 | grad:h=<poly>."""
    if spec == "none":
        return VectorPotential.none()
    head, _, arg = spec.partition(":")
    if head == "const":
        try:
            return VectorPotential.constant(float(arg))
        except ValueError:
            raise ValidationError(f"const potential needs a number, got {arg!r}")
    if head == "grad":
        if not arg.startswith("h="):
            raise ValidationError("gradient potential must be written grad:h=<poly>")
        return VectorPotential.gradient(_parse_poly(arg[2:]))
    raise ValidationError(
        f"unknown potential spec {spec!r}; use none, const:f0 or grad:h=<poly>"
    )


def _complexity_payload(reference, target, tol: float) -> dict:
    rel = relative_complex_structure(reference, target)
    c = state_complexity(reference, target, tol=tol)
    eig = np.linalg.eigvals(rel.delta)
    pairs = sorted(
        ((float(w.real), float(w.imag)) for w in eig),
        key=lambda p: (-p[0], -p[1]),
    )
    return {
        "complexity": c,
        "generator": (0.5 * rel.log_delta).tolist(),
        "delta_eigenvalues": [list(p) for p in pairs],
    }


def cmd_complexity(args) -> int:
    reference = _load_state(args.reference)
    if args.batch:
        directory = Path(args.batch)
        if not directory.is_dir():
            raise ValidationError(f"batch path {args.batch} is not a directory")
        files = sorted(directory.glob("*.json"))
        if not files:
            raise ValidationError(f"no .json files in {args.batch}")
        results = []
        worst = EXIT_OK
        for f in files:
            entry = {"file": f.name}
            try:
                target = _load_state(str(f))
                entry.update(_complexity_payload(reference, target, args.tol))
            except ValidationError as exc:
                entry.update(_fail(exc))
                worst = worst or EXIT_VALIDATION
            except NumericDomainError as exc:
                entry.update(_fail(exc))
                worst = worst or EXIT_NUMERIC
            results.append(entry)
        _emit({"results": results}, args.format)
        return worst
    if not args.target:
        raise ValidationError("either --target or --batch is required")
    target = _load_state(args.target)
    _emit(_complexity_payload(reference, target, args.tol), args.format)
    return EXIT_OK


def cmd_coherent(args) -> int:
    reference = _load_state(args.reference)
    target = _load_state(args.target)
    geo = coherent_geodesic(reference, target)
    rel = geo.delta
    eig = np.linalg.eigvals(rel.delta)
    pairs = sorted(
        ((float(w.real), float(w.imag)) for w in eig),
        key=lambda p: (-p[0], -p[1]),
    )
    payload = {
        "complexity": coherent_complexity(geo),
        "generator": (0.5 * rel.log_delta).tolist(),
        "delta_eigenvalues": [list(p) for p in pairs],
        "z_target": geo.z_target.tolist(),
        "N_matrix": geo.n_matrix.tolist(),
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_weyl(args) -> int:
    reference = _load_state(args.reference)
    target = _load_state(args.target)
    factor = _parse_omega(args.omega)
    base = state_complexity(reference, target, tol=args.tol)
    deformed = weyl_complexity(base, factor, args.quad_steps)
    payload = {
        "complexity": deformed,
        "base_complexity": base,
        "omega": args.omega,
        "quad_steps": args.quad_steps,
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_nonrev(args) -> int:
    r0, phi0 = _parse_pair(args.start, "--start")
    vr0, vphi0 = _parse_pair(args.velocity, "--velocity")
    potential = _parse_potential(args.potential)
    if args.length <= 0.0:
        raise ValidationError("--length must be positive")
    path = lorentz_geodesic(
        (r0, phi0), (vr0, vphi0), potential, length=args.length, rk_steps=args.rk_steps
    )
    forward = nonreversible_cost(path, a=potential)
    reverse = nonreversible_cost(path.reversed(), a=potential)
    length = path_length(path)
    profile = nonreversible_cost_profile(path, a=potential)
    rows = ["tau,r,phi,cost_accumulated"]
    for tau, (r, phi), cost in zip(path.params, path.samples, profile):
        rows.append(f"{tau:.17g},{r:.17g},{phi:.17g},{cost:.17g}")
    csv_text = "\n".join(rows) + "\n"
    if args.csv_out:
        Path(args.csv_out).write_text(csv_text)
    if args.format == "csv":
        sys.stdout.write(csv_text)
        return EXIT_OK
    payload = {
        "forward_cost": forward,
        "reverse_cost": reverse,
        "length": length,
        "potential": args.potential,
        "rk_steps": args.rk_steps,
        "samples": len(path.params),
    }
    if args.csv_out:
        payload["csv_path"] = args.csv_out
    _emit(payload, args.format)
    return EXIT_OK


def cmd_oracle_verify(args) -> int:
    reference = _load_state(args.reference)
    target = _load_state(args.target)
    if np.any(target.z != 0.0) or np.any(reference.z != 0.0):
        geo = coherent_geodesic(reference, target)
        closed = coherent_complexity(geo)
    else:
        closed = state_complexity(reference, target, tol=args.tol)
    path, oracle_len = minimize_to_target(
        reference,
        target,
        segments=args.segments,
        restarts=args.restarts,
        seed=args.seed,
    )
    if closed > 1e-12:
        gap = (oracle_len - closed) / closed
    else:
        gap = 0.0 if oracle_len < 1e-9 else float("inf")
    payload = {
        "closed_form": closed,
        "oracle_length": oracle_len,
        "relative_gap": gap,
        "converged": path.converged,
        "constraint_residual": path.constraint_residual,
        "segments": args.segments,
        "restarts": args.restarts,
        "seed": args.seed,
    }
    _emit(payload, args.format)
    return EXIT_OK if path.converged else EXIT_NO_CONVERGENCE


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="validation tolerance")
    common.add_argument("--seed", type=int, default=0, help="RNG seed")
    common.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    parser = argparse.ArgumentParser(
        prog="gcx",
        description="Geometric circuit complexity of pure Gaussian states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "complexity", parents=[common], help="closed-form complexity between two states"
    )
    p.add_argument("--reference", required=True, help="reference state JSON file")
    p.add_argument("--target", help="target state JSON file")
    p.add_argument("--batch", help="directory of target JSON files")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser(
        "coherent", parents=[common], help="complexity of a displaced bosonic target"
    )
    p.add_argument("--reference", required=True)
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser(
        "weyl", parents=[common], help="complexity under a Weyl-deformed metric"
    )
    p.add_argument("--reference", required=True)
    p.add_argument("--target", required=True)
    p.add_argument(
        "--omega", required=True, help="factor spec: const:c | linear:beta | table:file.csv"
    )
    p.add_argument("--quad-steps", type=int, default=128, help="Simpson intervals")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser(
        "nonrev", parents=[common], help="non-reversible cost along a Lorentz geodesic"
    )
    p.add_argument("--start", required=True, help="start point 'r,phi'")
    p.add_argument("--velocity", required=True, help="initial velocity 'vr,vphi'")
    p.add_argument(
        "--potential", default="none", help="spec: none | const:f0 | grad:h=<poly>"
    )
    p.add_argument("--length", type=float, default=1.0, help="arc length to integrate")
    p.add_argument("--rk-steps", type=int, default=256, help="RK4 step count")
    p.add_argument("--csv-out", help="write path samples CSV to this file")
    p.set_defaults(func=cmd_nonrev)

    p = sub.add_parser(
        "oracle-verify", parents=[common], help="variational check of the closed form"
    )
    p.add_argument("--reference", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--segments", type=int, default=16, help="path segments")
    p.add_argument("--restarts", type=int, default=5, help="optimizer restarts")
    p.set_defaults(func=cmd_oracle_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.tol <= 0.0:
        _emit(_fail(ValidationError("--tol must be positive")), "json")
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except ValidationError as exc:
        _emit(_fail(exc), "json")
        return EXIT_VALIDATION
    except NumericDomainError as exc:
        _emit(_fail(exc), "json")
        return EXIT_NUMERIC
    except GaussianComplexityError as exc:
        _emit(_fail(exc), "json")
        return EXIT_VALIDATION


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
