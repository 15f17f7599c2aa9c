"""Pseudo-fermion pairs on C^2 and the structure they generate.

A pseudo-fermion pair is a pair of operators (a, b), generally with
b != a^dagger, obeying

    {a, b} = 1,   a^2 = 0,   b^2 = 0.

From a validated pair the full derived structure follows constructively:
vacua phi0 (annihilated by a) and psi0 (annihilated by b^dagger), the
excited vectors phi1 = b phi0 and psi1 = a^dagger psi0, the two
biorthonormal bases they form, the positive metric operators
S_phi = sum |phi_n><phi_n| and S_psi = sum |psi_n><psi_n| (mutual
inverses), and the similarity to a standard fermion pair
c = S_psi^{1/2} a S_psi^{-1/2} with T = S_psi^{-1/2}.

Normalization convention: phi0 is unit-norm with the package phase
convention, and the full complex rescaling enforcing <phi0, psi0> = 1 is
absorbed into psi0.  Quantities compared against externally printed closed
forms should be compared at projector level (|phi_n><psi_n|), which is
invariant under this freedom.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegeneratePairingError,
    FullRankError,
    NotFermionError,
    NotIntertwinedError,
    NotPositiveError,
    NotPseudoFermionError,
    VacuumNotFoundError,
)
from .linalg import (
    DEFAULT_TOL,
    as_ket2,
    as_mat2,
    dagger,
    frob,
    herm_distance,
    inv2,
    nullspace2,
    outer,
    posdef_check,
    sqrt_posdef2,
)

RELATION_NAMES = (
    "anticomm_ab",
    "a_squared",
    "b_squared",
    "biortho",
    "metric_inverse",
    "intertwine_n",
    "intertwine_ndag",
    "ladder_down_phi",
    "ladder_down_psi",
    "number_phi",
    "number_psi",
    "similarity_forward",
    "similarity_backward",
)


def standard_lowering() -> np.ndarray:
    """The canonical fermionic annihilator in the number basis."""
    return np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class PFPair:
    """A validated pseudo-fermion pair; build through verify_pf."""

    a: np.ndarray
    b: np.ndarray
    tol: float


@dataclass(frozen=True, eq=False)
class PFSystem:
    """Everything a pseudo-fermion pair generates.

    Attributes
    ----------
    pair : PFPair
        The validated generating pair.
    phi0, phi1, psi0, psi1 : np.ndarray
        The two biorthonormal ladder bases, <phi_k, psi_n> = delta_kn.
    s_phi, s_psi : np.ndarray
        Positive metric operators, mutual inverses.
    s_psi_half, s_psi_invhalf : np.ndarray
        S_psi^{1/2} and S_psi^{-1/2}.
    n_op, n_dag : np.ndarray
        Number-like operators b a and (b a)^dagger.
    c_op, t_op : np.ndarray
        Fermionization data: c = S_psi^{1/2} a S_psi^{-1/2} satisfies the
        canonical anticommutation relations, and a = T c T^{-1} with
        T = S_psi^{-1/2}.
    """

    pair: PFPair
    phi0: np.ndarray
    phi1: np.ndarray
    psi0: np.ndarray
    psi1: np.ndarray
    s_phi: np.ndarray
    s_psi: np.ndarray
    s_psi_half: np.ndarray
    s_psi_invhalf: np.ndarray
    n_op: np.ndarray
    n_dag: np.ndarray
    c_op: np.ndarray
    t_op: np.ndarray


@dataclass(frozen=True)
class RelationReport:
    """Named nonnegative residuals for every defining and derived relation."""

    residuals: dict[str, float]

    def worst(self) -> tuple[str, float]:
        name = max(self.residuals, key=self.residuals.get)
        return name, self.residuals[name]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())


def pf_residuals(a, b) -> dict[str, float]:
    """Frobenius residuals of the three defining anticommutation rules."""
    a = as_mat2(a)
    b = as_mat2(b)
    return {
        "anticomm_ab": frob(a @ b + b @ a - np.eye(2)),
        "a_squared": frob(a @ a),
        "b_squared": frob(b @ b),
    }


def verify_pf(a, b, tol: float = DEFAULT_TOL) -> PFPair:
    """Validate {a,b}=1, a^2=b^2=0 within tol and return the pair.

    Raises NotPseudoFermionError carrying the first failing residual's name
    and value.
    """
    a = as_mat2(a)
    b = as_mat2(b)
    residuals = pf_residuals(a, b)
    for name in ("anticomm_ab", "a_squared", "b_squared"):
        if residuals[name] > tol:
            raise NotPseudoFermionError(name, residuals[name], tol)
    return PFPair(a=a, b=b, tol=tol)


def build_system(pair: PFPair) -> PFSystem:
    """Run the full construction from a validated pair.

    phi0 is the unit-norm null vector of a (phase convention applied); psi0
    is the null vector of b^dagger rescaled so that <phi0, psi0> = 1
    exactly.  Raises VacuumNotFoundError when either operator has full
    numerical rank, DegeneratePairingError when the vacua are orthogonal.
    """
    a, b, tol = pair.a, pair.b, pair.tol
    try:
        phi0 = nullspace2(a, tol)
    except FullRankError as exc:
        raise VacuumNotFoundError("a annihilates no nonzero vector") from exc
    try:
        psi0 = nullspace2(dagger(b), tol)
    except FullRankError as exc:
        raise VacuumNotFoundError("b^dagger annihilates no nonzero vector") from exc

    pairing = complex(np.vdot(phi0, psi0))
    if abs(pairing) <= tol:
        raise DegeneratePairingError(
            f"<phi0, psi0> = {abs(pairing):.3e}; the vacua cannot be biorthonormalized"
        )
    psi0 = psi0 / pairing

    phi1 = b @ phi0
    psi1 = dagger(a) @ psi0

    s_phi = outer(phi0, phi0) + outer(phi1, phi1)
    s_psi = outer(psi0, psi0) + outer(psi1, psi1)
    s_psi_half = sqrt_posdef2(s_psi, tol)
    s_psi_invhalf = inv2(s_psi_half, tol)

    n_op = b @ a
    c_op = s_psi_half @ a @ s_psi_invhalf

    return PFSystem(
        pair=pair,
        phi0=phi0,
        phi1=phi1,
        psi0=psi0,
        psi1=psi1,
        s_phi=s_phi,
        s_psi=s_psi,
        s_psi_half=s_psi_half,
        s_psi_invhalf=s_psi_invhalf,
        n_op=n_op,
        n_dag=dagger(n_op),
        c_op=c_op,
        t_op=s_psi_invhalf,
    )


def check_relations(system: PFSystem) -> RelationReport:
    """Evaluate every defining and derived relation of the structure.

    All residuals are Frobenius (matrices) or Euclidean (vectors) norms;
    nothing is mutated.
    """
    a, b = system.pair.a, system.pair.b
    eye = np.eye(2)
    gram = np.array(
        [
            [np.vdot(system.phi0, system.psi0), np.vdot(system.phi0, system.psi1)],
            [np.vdot(system.phi1, system.psi0), np.vdot(system.phi1, system.psi1)],
        ]
    )
    n0 = dagger(system.c_op) @ system.c_op
    vnorm = np.linalg.norm
    residuals = {
        "anticomm_ab": frob(a @ b + b @ a - eye),
        "a_squared": frob(a @ a),
        "b_squared": frob(b @ b),
        "biortho": frob(gram - eye),
        "metric_inverse": frob(system.s_phi @ system.s_psi - eye),
        "intertwine_n": frob(system.s_psi @ system.n_op - system.n_dag @ system.s_psi),
        "intertwine_ndag": frob(system.s_phi @ system.n_dag - system.n_op @ system.s_phi),
        "ladder_down_phi": float(vnorm(a @ system.phi1 - system.phi0)),
        "ladder_down_psi": float(vnorm(dagger(b) @ system.psi1 - system.psi0)),
        "number_phi": max(
            float(vnorm(system.n_op @ system.phi0)),
            float(vnorm(system.n_op @ system.phi1 - system.phi1)),
        ),
        "number_psi": max(
            float(vnorm(system.n_dag @ system.psi0)),
            float(vnorm(system.n_dag @ system.psi1 - system.psi1)),
        ),
        "similarity_forward": frob(
            system.s_psi_half @ system.n_op @ system.s_psi_invhalf - n0
        ),
        "similarity_backward": frob(
            system.s_psi_invhalf @ n0 @ system.s_psi_half - system.n_op
        ),
    }
    return RelationReport(residuals=residuals)


def pseudofermionize(c, t, tol: float = DEFAULT_TOL) -> PFPair:
    """Build the pair (T c T^{-1}, T c^dagger T^{-1}) from a fermion and a
    positive T.

    Raises NotFermionError when c fails the canonical anticommutation
    relations, NotPositiveError when T is not Hermitian positive definite.
    """
    c = as_mat2(c)
    t = as_mat2(t)
    fermion_resid = max(
        frob(c @ dagger(c) + dagger(c) @ c - np.eye(2)), frob(c @ c)
    )
    if fermion_resid > tol:
        raise NotFermionError(
            f"c violates the canonical anticommutation relations (residual {fermion_resid:.3e})"
        )
    if herm_distance(t) > tol or not posdef_check(t, tol):
        raise NotPositiveError("T must be Hermitian positive definite")
    t_inv = inv2(t, tol)
    return verify_pf(t @ c @ t_inv, t @ dagger(c) @ t_inv, tol)


def fermionize(system: PFSystem) -> tuple[np.ndarray, np.ndarray]:
    """Return (c, T) with c = S_psi^{1/2} a S_psi^{-1/2} and T = S_psi^{-1/2}.

    c obeys the canonical anticommutation relations and
    pseudofermionize(c, T) reproduces the original pair.
    """
    return np.array(system.c_op), np.array(system.t_op)


def hamiltonian_from_pf(system: PFSystem, eps0: float, eps1: float) -> np.ndarray:
    """The factorized Hamiltonian (eps1 - eps0) b a + eps0 I.

    Its right eigenvectors are phi_n with eigenvalue eps_n, and its adjoint
    has eigenvectors psi_n at the same eigenvalues.
    """
    return (eps1 - eps0) * system.n_op + eps0 * np.eye(2)


def similar_selfadjoint(system: PFSystem, h, tol: float | None = None) -> np.ndarray:
    """Conjugate an intertwined operator into its Hermitian counterpart.

    Requires S_psi H = H^dagger S_psi within tol (relative to the operator
    norms); returns S_psi^{1/2} H S_psi^{-1/2}, which is then Hermitian and
    isospectral with H.  Raises NotIntertwinedError otherwise.
    """
    h = as_mat2(h)
    if tol is None:
        tol = system.pair.tol
    resid = frob(system.s_psi @ h - dagger(h) @ system.s_psi)
    scale = max(1.0, frob(system.s_psi) * frob(h))
    if resid > tol * scale:
        raise NotIntertwinedError(
            f"S_psi H - H^dagger S_psi has norm {resid:.3e}; operator is not intertwined"
        )
    return system.s_psi_half @ h @ system.s_psi_invhalf


def random_pf_pair(seed: int, tol: float = DEFAULT_TOL) -> PFPair:
    """Deterministic random pair: c conjugated by T = G G^dagger + 0.1 I.

    G has independent complex Gaussian entries drawn from a generator owned
    by this call, so the result is a pure function of the seed.
    """
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    t = g @ dagger(g) + 0.1 * np.eye(2)
    return pseudofermionize(standard_lowering(), t, tol)


def deformed_inner(system: PFSystem, f, g) -> complex:
    """Inner product <f, g>_S = <S_psi^{1/2} f, S_psi^{1/2} g>.

    Operators intertwined by S_psi are symmetric with respect to it.
    """
    f = as_ket2(f)
    g = as_ket2(g)
    return complex(np.vdot(system.s_psi_half @ f, system.s_psi_half @ g))
