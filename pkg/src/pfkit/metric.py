"""Existence solver for positive metrics of 2x2 non-self-adjoint Hamiltonians.

Given H, decide whether a Hermitian positive-definite S with S H = H^dagger S
exists, and produce the full solution family.  After splitting off a real
multiple of the identity the problem is linear: writing the traceless part
as [[a, b], [c, -a]] and S = [[sigma11, s], [conj(s), sigma22]], the
intertwining equation becomes a real 4x4 homogeneous system

    X . (sigma11, sigma22, Re s, Im s) = 0,

whose null space is computed exactly-shaped and then searched for a
positive-definite element.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import ComplexTraceError
from .linalg import (
    DEFAULT_TOL,
    as_mat2,
    dagger,
    det2,
    frob,
    nullspace4,
    posdef_check,
)

_GRID_POINTS = 64


class MetricStatus(str, enum.Enum):
    POSITIVE_METRIC_FOUND = "PositiveMetricFound"
    NULLSPACE_ONLY_INDEFINITE = "NullspaceOnlyIndefinite"
    NO_SOLUTION = "NoSolution"


@dataclass(frozen=True, eq=False)
class MetricProblem:
    """Input Hamiltonian split into a traceless part plus a real shift.

    h_in = h0 + shift * I with tr(h0) = 0 exactly; (a, b, c) are the
    entries of h0 in the layout [[a, b], [c, -a]].
    """

    h_in: np.ndarray
    h0: np.ndarray
    shift: complex
    a: complex
    b: complex
    c: complex


class ConditionDiagnostics(NamedTuple):
    """Scalar necessary condition |2 Re(a) Im(a) + Im(bc)| and det(X)."""

    residual: float
    det_x: float


@dataclass(frozen=True, eq=False)
class MetricSolution:
    """Null-space family of candidate metrics plus a positive representative.

    nullspace vectors are ordered (sigma11, sigma22, Re s, Im s); the
    representative, when present, is Hermitian positive definite,
    normalized to trace 2, and intertwines the input Hamiltonian.
    """

    x_matrix: np.ndarray
    nullspace: list[np.ndarray]
    representative: np.ndarray | None
    condition_residual: float
    det_x: float
    status: MetricStatus


def make_traceless(h, tol: float = DEFAULT_TOL) -> MetricProblem:
    """Split H into a traceless part and a real multiple of the identity.

    S H = H^dagger S holds iff S h0 = h0^dagger S when the shift is real,
    so the reduction is lossless.  A non-real trace is rejected: S lambda =
    conj(lambda) S forces lambda real for invertible Hermitian S.
    """
    h = as_mat2(h)
    trace = complex(h[0, 0] + h[1, 1])
    if abs(trace.imag) > tol:
        raise ComplexTraceError(
            f"tr(H) has imaginary part {trace.imag:.3e}; no Hermitian metric can intertwine it"
        )
    a = (h[0, 0] - h[1, 1]) / 2.0
    h0 = np.array([[a, h[0, 1]], [h[1, 0], -a]], dtype=complex)
    return MetricProblem(
        h_in=h,
        h0=h0,
        shift=trace / 2.0,
        a=complex(a),
        b=complex(h[0, 1]),
        c=complex(h[1, 0]),
    )


def build_x(prob: MetricProblem) -> np.ndarray:
    """Real 4x4 coefficient matrix of the intertwining system X Phi = 0."""
    a, b, c = prob.a, prob.b, prob.c
    return np.array(
        [
            [a.imag, 0.0, c.imag, c.real],
            [0.0, a.imag, -b.imag, b.real],
            [b.real, -c.real, -2.0 * a.real, 0.0],
            [b.imag, c.imag, 0.0, -2.0 * a.real],
        ]
    )


def necessary_condition(prob: MetricProblem) -> ConditionDiagnostics:
    """Evaluate the scalar necessary condition for a metric to exist.

    Returns |2 Re(a) Im(a) + Im(bc)| together with det(X) as an auxiliary
    diagnostic; a nontrivial null space requires det(X) = 0.  The two are
    reported independently, with no equivalence assumed between them.
    """
    residual = abs(2.0 * prob.a.real * prob.a.imag + (prob.b * prob.c).imag)
    det_x = float(np.linalg.det(build_x(prob)))
    return ConditionDiagnostics(residual=residual, det_x=det_x)


def _metric_from_vector(v: np.ndarray) -> np.ndarray:
    s = complex(v[2], v[3])
    return np.array([[v[0], s], [np.conj(s), v[1]]], dtype=complex)


def _pair_quadratic(a_m: np.ndarray, b_m: np.ndarray) -> np.ndarray:
    # det(alpha A + beta B) as a real quadratic form in (alpha, beta).
    det_a = det2(a_m).real
    det_b = det2(b_m).real
    cross = (np.trace(a_m) * np.trace(b_m) - np.trace(a_m @ b_m)).real
    return np.array([[det_a, cross / 2.0], [cross / 2.0, det_b]])


def _search_positive(vectors: list[np.ndarray], tol: float) -> np.ndarray | None:
    """Find a positive-definite element in the span of candidate metrics.

    Singles are tested with both signs.  For pairs, the determinant over a
    circle of combinations is a quadratic form: a positive element exists in
    the plane iff its largest eigenvalue is positive, and the corresponding
    eigenvector (sign-fixed by the trace) is the witness.  A 64-point
    angular grid backs up the analytic test.
    """
    mats = [_metric_from_vector(v) for v in vectors]
    for m in mats:
        for cand in (m, -m):
            if posdef_check(cand, tol):
                return cand
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            a_m, b_m = mats[i], mats[j]
            w, vecs = np.linalg.eigh(_pair_quadratic(a_m, b_m))
            if w[-1] > tol:
                cand = vecs[0, -1] * a_m + vecs[1, -1] * b_m
                if np.trace(cand).real < 0.0:
                    cand = -cand
                if posdef_check(cand, tol):
                    return cand
            for t in np.linspace(0.0, 2.0 * np.pi, _GRID_POINTS, endpoint=False):
                cand = np.cos(t) * a_m + np.sin(t) * b_m
                if posdef_check(cand, tol):
                    return cand
    return None


def solve_metric(h, tol: float = DEFAULT_TOL) -> MetricSolution:
    """Decide whether a positive metric exists for H and produce the family.

    Runs make_traceless, builds X, extracts the null space, and searches it
    for a positive-definite element.  The representative is normalized to
    trace 2 so that Hermitian inputs yield the identity.
    """
    prob = make_traceless(h, tol)
    x = build_x(prob)
    vectors = nullspace4(x, tol)
    diag = necessary_condition(prob)

    if not vectors:
        return MetricSolution(
            x_matrix=x,
            nullspace=vectors,
            representative=None,
            condition_residual=diag.residual,
            det_x=diag.det_x,
            status=MetricStatus.NO_SOLUTION,
        )

    found = _search_positive(vectors, tol)
    if found is None:
        return MetricSolution(
            x_matrix=x,
            nullspace=vectors,
            representative=None,
            condition_residual=diag.residual,
            det_x=diag.det_x,
            status=MetricStatus.NULLSPACE_ONLY_INDEFINITE,
        )

    representative = 2.0 * found / np.trace(found).real
    return MetricSolution(
        x_matrix=x,
        nullspace=vectors,
        representative=representative,
        condition_residual=diag.residual,
        det_x=diag.det_x,
        status=MetricStatus.POSITIVE_METRIC_FOUND,
    )


def verify_intertwining(s, h) -> float:
    """Frobenius residual of S H = H^dagger S."""
    s = as_mat2(s)
    h = as_mat2(h)
    return frob(s @ h - dagger(h) @ s)
