"""Command-line front end.

Subcommands: verify (operator pair relations), metric (positive-metric
existence), model (parametrized constructors), coherent (bi-coherent state
checks), fuzz (randomized end-to-end pipeline).  Reports go to stdout,
diagnostics to stderr, and exit codes are the only pass/fail channel:
0 success, 1 domain failure, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import models
from .algebra import (
    build_system,
    check_relations,
    hamiltonian_from_pf,
    pf_residuals,
    random_pf_pair,
    verify_pf,
)
from .exceptions import (
    ComplexTraceError,
    NotPseudoFermionError,
    PseudoFermionError,
)
from .grassmann import (
    MONOMIALS,
    GElem,
    bicoherent,
    eigen_relation_residuals,
    resolution_check,
)
from .linalg import eig2, frob, inv2, sqrt_posdef2
from .metric import MetricStatus, solve_metric, verify_intertwining
from .wire import (
    DocumentError,
    complex_to_wire,
    eigenpairs_to_wire,
    ket2_to_wire,
    load_document,
    mat2_to_wire,
    mat4r_to_wire,
    parse_complex,
    parse_mat2,
    vec4_to_wire,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FUZZ_THRESHOLD = 1e-9


def _default_tol() -> float:
    return float(os.environ.get("PFKIT_TOL", "1e-10"))


def _read_document(path: str) -> dict:
    if path == "-":
        return load_document(sys.stdin.read())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return load_document(fh.read())
    except OSError as exc:
        raise DocumentError("document", f"cannot read {path!r}: {exc}") from exc


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {json.dumps(item)}" for item in obj)
    return f"{pad}{json.dumps(obj)}"


def _is_flat(value) -> bool:
    if isinstance(value, list):
        return all(not isinstance(v, dict) for v in value)
    return False


def _emit(report: dict, args) -> None:
    if args.output == "text":
        print(_render_text(report))
    else:
        print(json.dumps(report, indent=2))


def _system_to_wire(system) -> dict:
    return {
        "phi0": ket2_to_wire(system.phi0),
        "phi1": ket2_to_wire(system.phi1),
        "psi0": ket2_to_wire(system.psi0),
        "psi1": ket2_to_wire(system.psi1),
        "s_phi": mat2_to_wire(system.s_phi),
        "s_psi": mat2_to_wire(system.s_psi),
        "s_psi_half": mat2_to_wire(system.s_psi_half),
        "s_psi_invhalf": mat2_to_wire(system.s_psi_invhalf),
        "n": mat2_to_wire(system.n_op),
        "n_dagger": mat2_to_wire(system.n_dag),
        "c": mat2_to_wire(system.c_op),
        "t": mat2_to_wire(system.t_op),
    }


def cmd_verify(args) -> int:
    doc = _read_document(args.input)
    a = parse_mat2(doc, "a")
    b = parse_mat2(doc, "b")
    started = time.perf_counter()
    report = {
        "command": "verify",
        "tol": args.tol,
        "input": {"a": mat2_to_wire(a), "b": mat2_to_wire(b)},
    }
    try:
        pair = verify_pf(a, b, args.tol)
        system = build_system(pair)
    except NotPseudoFermionError as exc:
        report["status"] = "NotPseudoFermion"
        report["failing_residual"] = exc.residual_name
        report["residuals"] = pf_residuals(a, b)
        report["elapsed_seconds"] = time.perf_counter() - started
        _emit(report, args)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PseudoFermionError as exc:
        report["status"] = type(exc).__name__
        report["residuals"] = pf_residuals(a, b)
        report["elapsed_seconds"] = time.perf_counter() - started
        _emit(report, args)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    relations = check_relations(system)
    report["status"] = "ok" if relations.max_residual <= args.tol else "RelationsViolated"
    report["residuals"] = relations.residuals
    report["system"] = _system_to_wire(system)
    report["spectra"] = {
        "n": eigenpairs_to_wire(eig2(system.n_op)),
        "n_dagger": eigenpairs_to_wire(eig2(system.n_dag)),
    }
    report["elapsed_seconds"] = time.perf_counter() - started
    _emit(report, args)
    return EXIT_OK if relations.max_residual <= args.tol else EXIT_FAIL


def cmd_metric(args) -> int:
    doc = _read_document(args.input)
    h = parse_mat2(doc, "H")
    started = time.perf_counter()
    report = {
        "command": "metric",
        "tol": args.tol,
        "input": {"H": mat2_to_wire(h)},
    }
    try:
        solution = solve_metric(h, args.tol)
    except ComplexTraceError as exc:
        report["status"] = "ComplexTrace"
        report["detail"] = str(exc)
        report["elapsed_seconds"] = time.perf_counter() - started
        _emit(report, args)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    report["status"] = solution.status.value
    report["condition_residual"] = solution.condition_residual
    report["det_x"] = solution.det_x
    report["x_matrix"] = mat4r_to_wire(solution.x_matrix)
    report["nullspace_dimension"] = len(solution.nullspace)
    report["nullspace"] = [vec4_to_wire(v) for v in solution.nullspace]
    if solution.representative is not None:
        s = solution.representative
        s_half = sqrt_posdef2(s, args.tol)
        h_similar = s_half @ h @ inv2(s_half, args.tol)
        report["representative"] = mat2_to_wire(s)
        report["intertwining_residual"] = verify_intertwining(s, h)
        report["h_similar"] = mat2_to_wire(h_similar)
        report["spectra"] = {
            "h_input": eigenpairs_to_wire(eig2(h)),
            "h_similar": eigenpairs_to_wire(eig2(h_similar)),
        }
    report["elapsed_seconds"] = time.perf_counter() - started
    _emit(report, args)
    return EXIT_OK if solution.status is MetricStatus.POSITIVE_METRIC_FOUND else EXIT_FAIL


def _collect_model_params(args) -> dict:
    params = {}
    if args.beta is not None:
        params["beta_a"] = args.beta
    if args.k is not None:
        params["k"] = args.k if args.name == "alpha" else complex(args.k)
    if args.alpha is not None:
        params["alpha"] = args.alpha
    if args.delta is not None:
        params["delta"] = args.delta
    if args.omega is not None:
        params["omega"] = args.omega
    for key in ("theta", "phi", "eps0", "eps1"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.branch is not None:
        params["branch"] = args.branch
    return params


def _params_to_wire(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, complex):
            out[key] = complex_to_wire(value)
        else:
            out[key] = value
    return out


def cmd_model(args) -> int:
    if args.name not in models.MODEL_NAMES:
        print(
            f"error: unknown model {args.name!r}; expected one of {', '.join(models.MODEL_NAMES)}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    params = _collect_model_params(args)
    started = time.perf_counter()
    try:
        model = models.build_model(args.name, params, args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PseudoFermionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    relations = check_relations(model.system)
    spectra_source = {
        "car": model.system.n_op,
        "alpha": model.system.n_op,
        "two-level": model.closed_forms.get("h_eff"),
        "biortho": model.closed_forms.get("h"),
    }[args.name]
    report = {
        "command": "model",
        "tol": args.tol,
        "name": model.name,
        "params": _params_to_wire(model.params),
        "closed_forms": {key: _closed_form_to_wire(value) for key, value in model.closed_forms.items()},
        "system": _system_to_wire(model.system),
        "residuals": relations.residuals,
        "crossvalidation": models.crossvalidate(model),
        "spectra": eigenpairs_to_wire(eig2(spectra_source)),
        "elapsed_seconds": time.perf_counter() - started,
    }
    _emit(report, args)
    return EXIT_OK


def _closed_form_to_wire(value: np.ndarray):
    arr = np.asarray(value)
    if arr.shape == (2, 2):
        return mat2_to_wire(arr)
    return ket2_to_wire(arr)


def _gelem_to_wire(x: GElem) -> dict:
    """Ket-valued Grassmann element as a map monomial -> coefficient vector."""
    return {name: ket2_to_wire(coeff) for name, coeff in zip(MONOMIALS, x.coeffs)}


def cmd_coherent(args) -> int:
    doc = _read_document(args.input)
    started = time.perf_counter()
    try:
        if "model" in doc:
            name = doc["model"]
            raw = doc.get("params", {})
            if not isinstance(raw, dict):
                raise DocumentError("params", "expected an object of named parameters")
            params = {
                key: parse_complex(value, f"params.{key}") if isinstance(value, list) else value
                for key, value in raw.items()
            }
            if "omega" in params:
                params["omega"] = complex(params["omega"])
            model = models.build_model(name, params, args.tol)
            system = model.system
            echo = {"model": name, "params": _params_to_wire(model.params)}
        elif "a" in doc or "b" in doc:
            a = parse_mat2(doc, "a")
            b = parse_mat2(doc, "b")
            system = build_system(verify_pf(a, b, args.tol))
            echo = {"a": mat2_to_wire(a), "b": mat2_to_wire(b)}
        else:
            raise DocumentError("document", "expected matrices 'a' and 'b' or a 'model' reference")
    except ValueError as exc:
        if isinstance(exc, DocumentError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PseudoFermionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL

    phi_xi, psi_xi = bicoherent(system)
    eigres = eigen_relation_residuals(system, phi_xi, psi_xi)
    resolution = resolution_check(phi_xi, psi_xi)
    resolution_residual = frob(resolution - np.eye(2))
    report = {
        "command": "coherent",
        "tol": args.tol,
        "input": echo,
        "phi_xi": _gelem_to_wire(phi_xi),
        "psi_xi": _gelem_to_wire(psi_xi),
        "eigen_relation_residuals": eigres,
        "resolution": mat2_to_wire(resolution),
        "resolution_residual": resolution_residual,
        "elapsed_seconds": time.perf_counter() - started,
    }
    _emit(report, args)
    worst = max(max(eigres.values()), resolution_residual)
    return EXIT_OK if worst <= args.tol else EXIT_FAIL


def cmd_fuzz(args) -> int:
    if args.count < 1:
        print("error: --count must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    started = time.perf_counter()
    seeds = np.random.SeedSequence(args.seed).generate_state(args.count, np.uint64)
    maxima: dict[str, float] = {}
    failures = 0

    def bump(name: str, value: float) -> None:
        maxima[name] = max(maxima.get(name, 0.0), float(value))

    for i in range(args.count):
        trial_seed = int(seeds[i])
        pair = random_pf_pair(trial_seed)
        system = build_system(pair)
        for name, value in check_relations(system).residuals.items():
            bump(name, value)

        phi_xi, psi_xi = bicoherent(system)
        for name, value in eigen_relation_residuals(system, phi_xi, psi_xi).items():
            bump(name, value)
        bump("resolution_identity", frob(resolution_check(phi_xi, psi_xi) - np.eye(2)))

        rng = np.random.default_rng([args.seed, i])
        eps0 = float(rng.uniform(-2.0, 2.0))
        eps1 = eps0 + 0.5 + float(rng.uniform(0.0, 2.0))
        hamiltonian = hamiltonian_from_pf(system, eps0, eps1)
        solution = solve_metric(hamiltonian)
        if solution.status is not MetricStatus.POSITIVE_METRIC_FOUND:
            failures += 1
            continue
        bump("metric_intertwining", verify_intertwining(solution.representative, hamiltonian))

    worst = max(maxima.values()) if maxima else 0.0
    passed = failures == 0 and worst <= FUZZ_THRESHOLD
    summary = {
        "command": "fuzz",
        "count": args.count,
        "seed": args.seed,
        "threshold": FUZZ_THRESHOLD,
        "max_residuals": maxima,
        "metric_failures": failures,
        "pass": passed,
        "elapsed_seconds": time.perf_counter() - started,
    }
    _emit(summary, args)
    return EXIT_OK if passed else EXIT_FAIL


def _complex_flag(text: str) -> complex:
    """Parse 're,im' (or a bare real) from the command line."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--tol",
        type=float,
        default=_default_tol(),
        help="tolerance for every check (default 1e-10, or PFKIT_TOL)",
    )
    sub.add_argument(
        "--output",
        choices=("json", "text"),
        default="json",
        help="report format on stdout",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfkit",
        description="Pseudo-fermion toolkit on C^2: pair verification, metric solving, "
        "models, bi-coherent states.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    verify = subs.add_parser("verify", help="check a pair (a, b) and build its full structure")
    verify.add_argument("input", nargs="?", default="-", help="JSON file with matrices 'a' and 'b' ('-' for stdin)")
    _add_common(verify)
    verify.set_defaults(func=cmd_verify)

    metric = subs.add_parser("metric", help="decide whether a positive metric exists for H")
    metric.add_argument("input", nargs="?", default="-", help="JSON file with matrix 'H' ('-' for stdin)")
    _add_common(metric)
    metric.set_defaults(func=cmd_metric)

    model = subs.add_parser("model", help="run a parametrized model")
    model.add_argument("name", help=f"one of: {', '.join(models.MODEL_NAMES)}")
    model.add_argument("--beta", type=_complex_flag, default=None, help="car: beta_a as 're,im'")
    model.add_argument("--k", type=float, default=None, help="car/alpha: scale parameter")
    model.add_argument("--branch", choices=("raising", "lowering"), default=None, help="car branch")
    model.add_argument("--alpha", type=float, default=None, help="alpha: deformation in (-1, 1)")
    model.add_argument("--delta", type=float, default=None, help="two-level: decay parameter")
    model.add_argument("--omega", type=_complex_flag, default=None, help="two-level: coupling as 're,im'")
    model.add_argument("--theta", type=float, default=None, help="biortho: hyperbolic angle")
    model.add_argument("--phi", type=float, default=None, help="biortho: phase")
    model.add_argument("--eps0", type=float, default=None, help="biortho: lower eigenvalue")
    model.add_argument("--eps1", type=float, default=None, help="biortho: upper eigenvalue")
    _add_common(model)
    model.set_defaults(func=cmd_model)

    coherent = subs.add_parser("coherent", help="bi-coherent states and the resolution of identity")
    coherent.add_argument(
        "input", nargs="?", default="-",
        help="JSON file with matrices 'a', 'b' or a {'model': ..., 'params': ...} reference",
    )
    _add_common(coherent)
    coherent.set_defaults(func=cmd_coherent)

    fuzz = subs.add_parser("fuzz", help="randomized end-to-end pipeline")
    fuzz.add_argument("--count", type=int, required=True, help="number of trials (>= 1)")
    fuzz.add_argument("--seed", type=int, default=0, help="master seed")
    _add_common(fuzz)
    fuzz.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PseudoFermionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
