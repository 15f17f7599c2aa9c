"""Parametrized pseudo-fermion models with printed closed forms.

Each constructor returns the defining pair, the closed forms of every
derived quantity the model admits, and the system produced by the generic
pipeline -- so the closed forms and the pipeline validate each other.
Closed forms carry the model's own normalization; compare against the
generic system at projector level (see algebra module docstring).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    PFPair,
    PFSystem,
    build_system,
    check_relations,
    deformed_inner,
    standard_lowering,
    verify_pf,
)
from .exceptions import (
    ConsistencyCheckError,
    ExceptionalPointError,
    ParameterOutOfRangeError,
    ZeroParameterError,
)
from .linalg import dagger, frob, inv2, outer, sqrt_posdef2

MODEL_NAMES = ("car", "alpha", "two-level", "biortho")


@dataclass(frozen=True, eq=False)
class ModelOutput:
    """A model instance: parameters, validated pair, closed forms, system."""

    name: str
    params: dict
    pair: PFPair
    closed_forms: dict[str, np.ndarray]
    system: PFSystem


def _require(residual: float, what: str, tol: float) -> None:
    if residual > tol:
        raise ConsistencyCheckError(f"{what} failed: residual {residual:.3e} > {tol:.1e}")


def car_extension(
    beta_a: complex,
    k: complex = 1.0,
    branch: str = "raising",
    tol: float = DEFAULT_TOL,
) -> ModelOutput:
    """Pair built from linear combinations of one standard fermion mode.

    The nilpotency constraints leave only two branches: a proportional to
    the raising operator ("raising", a = beta_a c^dagger, b = c / beta_a,
    for which b a = 1 - c^dagger c) or to the lowering operator
    ("lowering", a = beta_a c, b = c^dagger / beta_a, b a = c^dagger c).
    The vacuum scale k is free and only moves normalizations around.
    """
    beta = complex(beta_a)
    kc = complex(k)
    if abs(beta) == 0.0:
        raise ZeroParameterError("beta_a must be nonzero")
    if abs(kc) == 0.0:
        raise ZeroParameterError("k must be nonzero")
    if branch not in ("raising", "lowering"):
        raise ParameterOutOfRangeError(f"branch must be 'raising' or 'lowering', got {branch!r}")

    c = standard_lowering()
    f0 = np.array([1.0, 0.0], dtype=complex)
    f1 = np.array([0.0, 1.0], dtype=complex)

    if branch == "raising":
        a = beta * dagger(c)
        b = c / beta
        phi0, phi1 = kc * f1, (kc / beta) * f0
        psi0, psi1 = f1 / np.conj(kc), (np.conj(beta) / np.conj(kc)) * f0
    else:
        a = beta * c
        b = dagger(c) / beta
        phi0, phi1 = kc * f0, (kc / beta) * f1
        psi0, psi1 = f0 / np.conj(kc), (np.conj(beta) / np.conj(kc)) * f1

    n0 = dagger(c) @ c
    n_expected = np.eye(2) - n0 if branch == "raising" else n0
    _require(frob(b @ a - n_expected), "number-operator identity", max(tol, 1e-13))

    closed = {
        "a": a,
        "b": b,
        "phi0": phi0,
        "phi1": phi1,
        "psi0": psi0,
        "psi1": psi1,
        "s_phi": outer(phi0, phi0) + outer(phi1, phi1),
        "s_psi": outer(psi0, psi0) + outer(psi1, psi1),
    }
    pair = verify_pf(a, b, tol)
    return ModelOutput(
        name="car",
        params={"beta_a": beta, "k": kc, "branch": branch},
        pair=pair,
        closed_forms=closed,
        system=build_system(pair),
    )


def alpha_model(k: float, alpha: float, tol: float = DEFAULT_TOL) -> ModelOutput:
    """One-parameter real deformation of the standard fermion pair.

    Requires k > 0 and -1 < alpha < 1.  All derived quantities have rational
    closed forms, including the metric square roots; conjugating a by
    S_phi^{+-1/2} recovers the standard fermion operators, and
    S_phi^{-1/2} phi_n gives the canonical basis.
    """
    k = float(k)
    alpha = float(alpha)
    if not k > 0.0:
        raise ParameterOutOfRangeError("k must be positive")
    if not -1.0 < alpha < 1.0:
        raise ParameterOutOfRangeError("alpha must lie in (-1, 1)")

    den = 1.0 - alpha**2
    a = np.array([[-alpha, 1.0], [-(alpha**2), alpha]], dtype=complex) / den
    b = np.array([[alpha, -(alpha**2)], [1.0, -alpha]], dtype=complex) / den
    phi0 = k * np.array([1.0, alpha], dtype=complex)
    phi1 = k * np.array([alpha, 1.0], dtype=complex)
    psi0 = np.array([1.0, -alpha], dtype=complex) / (k * den)
    psi1 = np.array([-alpha, 1.0], dtype=complex) / (k * den)
    s_phi = k**2 * np.array([[1.0 + alpha**2, 2.0 * alpha], [2.0 * alpha, 1.0 + alpha**2]], dtype=complex)
    s_psi = (
        np.array([[1.0 + alpha**2, -2.0 * alpha], [-2.0 * alpha, 1.0 + alpha**2]], dtype=complex)
        / (k**2 * den**2)
    )
    s_phi_half = k * np.array([[1.0, alpha], [alpha, 1.0]], dtype=complex)
    s_phi_invhalf = np.array([[1.0, -alpha], [-alpha, 1.0]], dtype=complex) / (k * den)

    ctol = max(tol, 1e-12)
    c = standard_lowering()
    _require(frob(s_phi_invhalf @ a @ s_phi_half - c), "reduction to the standard fermion", ctol)
    f_basis = (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    for n, (phi, f) in enumerate(zip((phi0, phi1), f_basis)):
        _require(float(np.linalg.norm(s_phi_invhalf @ phi - f)), f"basis recovery (n={n})", ctol)
    _require(frob(s_phi_half @ s_phi_half - s_phi), "metric square root", ctol)

    closed = {
        "a": a,
        "b": b,
        "phi0": phi0,
        "phi1": phi1,
        "psi0": psi0,
        "psi1": psi1,
        "s_phi": s_phi,
        "s_psi": s_psi,
        "s_phi_half": s_phi_half,
        "s_phi_invhalf": s_phi_invhalf,
    }
    pair = verify_pf(a, b, tol)
    return ModelOutput(
        name="alpha",
        params={"k": k, "alpha": alpha},
        pair=pair,
        closed_forms=closed,
        system=build_system(pair),
    )


def two_level_atom(delta: float, omega: complex, tol: float = DEFAULT_TOL) -> ModelOutput:
    """Effective two-level Hamiltonian with decay delta and coupling omega.

    H = (1/2) [[-i delta, conj(omega)], [omega, i delta]] factorizes as
    Omega (b a - 1/2) with Omega = sqrt(|omega|^2 - delta^2), which must be
    real and strictly positive; the degenerate locus Omega -> 0 is rejected
    as an exceptional point.  Vacuum normalization is fixed here as k = 1
    with k' chosen so that <phi0, psi0> = 1.
    """
    delta = float(delta)
    omega = complex(omega)
    gap = abs(omega) ** 2 - delta**2
    if gap <= tol:
        raise ExceptionalPointError(
            f"|omega|^2 - delta^2 = {gap:.3e} must be strictly positive"
        )
    big_omega = float(np.sqrt(gap))
    mod = abs(omega)
    phase = np.exp(1j * np.angle(omega))

    h_eff = 0.5 * np.array([[-1j * delta, np.conj(omega)], [omega, 1j * delta]], dtype=complex)
    a = np.array(
        [
            [-mod, -np.conj(phase) * (big_omega + 1j * delta)],
            [phase * (big_omega - 1j * delta), mod],
        ],
        dtype=complex,
    ) / (2.0 * big_omega)
    b = np.array(
        [
            [-mod, np.conj(phase) * (big_omega - 1j * delta)],
            [-phase * (big_omega + 1j * delta), mod],
        ],
        dtype=complex,
    ) / (2.0 * big_omega)

    kp = mod**2 / (2.0 * big_omega * (big_omega + 1j * delta))
    phi0 = np.array([1.0, -phase * (big_omega - 1j * delta) / mod], dtype=complex)
    phi1 = np.array([(1j * delta - big_omega) / mod, -phase], dtype=complex)
    psi0 = kp * np.array([1.0, -phase * (big_omega + 1j * delta) / mod], dtype=complex)
    psi1 = kp * np.array([(-1j * delta - big_omega) / mod, -phase], dtype=complex)

    off = 1j * delta * np.conj(phase) / mod
    s_phi = 2.0 * np.array([[1.0, -off], [np.conj(-off), 1.0]], dtype=complex)
    s_psi = (mod**2 / (2.0 * big_omega**2)) * np.array(
        [[1.0, off], [np.conj(off), 1.0]], dtype=complex
    )

    ctol = max(tol, 1e-12)
    _require(frob(h_eff - big_omega * (b @ a - 0.5 * np.eye(2))), "factorized Hamiltonian", ctol)
    vnorm = np.linalg.norm
    _require(float(vnorm(h_eff @ phi0 + 0.5 * big_omega * phi0)), "ground eigenvector", ctol)
    _require(float(vnorm(h_eff @ phi1 - 0.5 * big_omega * phi1)), "excited eigenvector", ctol)
    _require(float(vnorm(dagger(h_eff) @ psi0 + 0.5 * big_omega * psi0)), "adjoint ground", ctol)
    _require(float(vnorm(dagger(h_eff) @ psi1 - 0.5 * big_omega * psi1)), "adjoint excited", ctol)
    _require(frob(s_phi @ s_psi - np.eye(2)), "metric inverse pair", ctol)

    closed = {
        "h_eff": h_eff,
        "a": a,
        "b": b,
        "phi0": phi0,
        "phi1": phi1,
        "psi0": psi0,
        "psi1": psi1,
        "s_phi": s_phi,
        "s_psi": s_psi,
    }
    pair = verify_pf(a, b, tol)
    system = build_system(pair)

    rng = np.random.default_rng(0)
    for _ in range(4):
        f = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        g = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        sym = abs(deformed_inner(system, h_eff @ f, g) - deformed_inner(system, f, h_eff @ g))
        _require(sym, "deformed-inner-product symmetry", max(tol, 1e-10))

    return ModelOutput(
        name="two-level",
        params={"delta": delta, "omega": omega},
        pair=pair,
        closed_forms=closed,
        system=system,
    )


def biortho_hamiltonian(
    theta: float,
    phi: float,
    eps0: float,
    eps1: float,
    tol: float = DEFAULT_TOL,
) -> ModelOutput:
    """Pair and Hamiltonian built directly from hyperbolic biorthonormal bases.

    With phi_n, psi_n parametrized by (theta, phi), the rank-one sums
    H = eps0 |phi0><psi0| + eps1 |phi1><psi1|, a = |phi0><psi1| and
    b = |phi1><psi0| satisfy every pair relation exactly; eps0 and eps1 are
    the (real) eigenvalues of H and of its Hermitian counterpart
    S_psi^{1/2} H S_psi^{-1/2} = diag(eps0, eps1).
    """
    theta = float(theta)
    phi = float(phi)
    eps0 = float(eps0)
    eps1 = float(eps1)

    ch, sh = np.cosh(theta), np.sinh(theta)
    eip = np.exp(1j * phi)
    phi0 = np.array([ch, sh * np.conj(eip)], dtype=complex)
    phi1 = np.array([sh * eip, ch], dtype=complex)
    psi0 = np.array([ch, -sh * np.conj(eip)], dtype=complex)
    psi1 = np.array([-sh * eip, ch], dtype=complex)

    a = outer(phi0, psi1)
    b = outer(phi1, psi0)
    h = eps0 * outer(phi0, psi0) + eps1 * outer(phi1, psi1)
    s_psi = np.array(
        [
            [np.cosh(2.0 * theta), -np.sinh(2.0 * theta) * eip],
            [-np.sinh(2.0 * theta) * np.conj(eip), np.cosh(2.0 * theta)],
        ],
        dtype=complex,
    )
    h_explicit = np.array(
        [
            [eps0 * ch**2 - eps1 * sh**2, (eps1 - eps0) * sh * ch * eip],
            [-(eps1 - eps0) * sh * ch * np.conj(eip), -eps0 * sh**2 + eps1 * ch**2],
        ],
        dtype=complex,
    )

    scale = max(1.0, float(np.cosh(2.0 * theta)) * (abs(eps0) + abs(eps1) + 1.0))
    ctol = max(tol, 1e-12) * scale
    _require(frob(h - h_explicit), "explicit Hamiltonian entries", ctol)
    _require(frob(outer(phi0, psi0) + outer(phi1, psi1) - np.eye(2)), "completeness", ctol)
    _require(frob(h - ((eps1 - eps0) * b @ a + eps0 * np.eye(2))), "factorization", ctol)
    _require(frob(s_psi @ h - dagger(h) @ s_psi), "intertwining", ctol)
    s_psi_half = sqrt_posdef2(s_psi, tol)
    h_diag = s_psi_half @ h @ inv2(s_psi_half, tol)
    _require(frob(h_diag - np.diag([eps0, eps1])), "diagonal Hermitian counterpart", ctol)

    closed = {
        "phi0": phi0,
        "phi1": phi1,
        "psi0": psi0,
        "psi1": psi1,
        "a": a,
        "b": b,
        "h": h,
        "s_psi": s_psi,
        "s_phi": inv2(s_psi, tol),
        "h_diag": np.diag([eps0, eps1]).astype(complex),
    }
    pair = verify_pf(a, b, tol)
    return ModelOutput(
        name="biortho",
        params={"theta": theta, "phi": phi, "eps0": eps0, "eps1": eps1},
        pair=pair,
        closed_forms=closed,
        system=build_system(pair),
    )


def build_model(name: str, params: dict, tol: float = DEFAULT_TOL) -> ModelOutput:
    """Dispatch by model name; raises ValueError for unknown names or
    missing parameters."""
    schemas = {
        "car": ("beta_a", "k"),
        "alpha": ("k", "alpha"),
        "two-level": ("delta", "omega"),
        "biortho": ("theta", "phi", "eps0", "eps1"),
    }
    if name not in schemas:
        raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODEL_NAMES)}")
    missing = [key for key in schemas[name] if key not in params]
    if missing:
        raise ValueError(f"model {name!r} is missing parameters: {', '.join(missing)}")
    if name == "car":
        return car_extension(
            params["beta_a"], params["k"], params.get("branch", "raising"), tol
        )
    if name == "alpha":
        return alpha_model(params["k"], params["alpha"], tol)
    if name == "two-level":
        return two_level_atom(params["delta"], params["omega"], tol)
    return biortho_hamiltonian(
        params["theta"], params["phi"], params["eps0"], params["eps1"], tol
    )


def closed_system(model: ModelOutput) -> PFSystem:
    """Assemble a PFSystem from the model's closed forms alone.

    This is the independent route against which the generic pipeline is
    validated: only exact-shape primitives (closed-form square root and
    inverse) are used, never the vacuum construction.
    """
    cf = model.closed_forms
    s_psi = cf["s_psi"]
    s_phi = cf["s_phi"] if "s_phi" in cf else inv2(s_psi)
    s_psi_half = cf["s_phi_invhalf"] if "s_phi_invhalf" in cf else sqrt_posdef2(s_psi)
    s_psi_invhalf = inv2(s_psi_half)
    a, b = cf["a"], cf["b"]
    n_op = b @ a
    return PFSystem(
        pair=model.pair,
        phi0=cf["phi0"],
        phi1=cf["phi1"],
        psi0=cf["psi0"],
        psi1=cf["psi1"],
        s_phi=s_phi,
        s_psi=s_psi,
        s_psi_half=s_psi_half,
        s_psi_invhalf=s_psi_invhalf,
        n_op=n_op,
        n_dag=dagger(n_op),
        c_op=s_psi_half @ a @ s_psi_invhalf,
        t_op=s_psi_invhalf,
    )


def crossvalidate(model: ModelOutput) -> dict[str, float]:
    """Residuals between the closed forms and the generic pipeline.

    Basis comparisons happen at projector level, which is invariant under
    the normalization freedom both routes resolve differently.
    """
    cf = model.closed_forms
    system = model.system
    report = check_relations(system)
    return {
        "projector0": frob(outer(cf["phi0"], cf["psi0"]) - outer(system.phi0, system.psi0)),
        "projector1": frob(outer(cf["phi1"], cf["psi1"]) - outer(system.phi1, system.psi1)),
        "pair_a": frob(cf["a"] - system.pair.a),
        "pair_b": frob(cf["b"] - system.pair.b),
        "metric_product": frob(cf["s_phi"] @ cf["s_psi"] - np.eye(2)),
        "relations_max": report.max_residual,
    }
