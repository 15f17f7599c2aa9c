"""Closed-form dense linear algebra on C^2.

Exactly three shapes appear in this package: 2x2 complex operators, complex
2-vectors, and one 4x4 real system.  The closed forms below (characteristic
quadratic, adjugate inverse, Cayley-Hamilton square root) keep the error
analysis at the level of a handful of flops.  Returned vectors follow a
single deterministic phase convention -- first nonzero component real and
positive -- so golden tests are reproducible.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .exceptions import (
    FullRankError,
    NotHermitianError,
    NotPositiveError,
    SingularMatrixError,
    ZeroMatrixError,
)

DEFAULT_TOL = 1e-10

_PHASE_EPS = 1e-12


def as_mat2(m) -> np.ndarray:
    """Validate and copy a 2x2 complex matrix."""
    out = np.array(m, dtype=complex)
    if out.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix entries must be finite")
    return out


def as_ket2(v) -> np.ndarray:
    """Validate and copy a complex 2-vector."""
    out = np.array(v, dtype=complex)
    if out.shape != (2,):
        raise ValueError(f"expected a complex 2-vector, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("vector components must be finite")
    return out


def as_mat4r(x) -> np.ndarray:
    """Validate and copy a 4x4 real matrix."""
    out = np.array(x, dtype=float)
    if out.shape != (4, 4):
        raise ValueError(f"expected a 4x4 real matrix, got shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix entries must be finite")
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def frob(m) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(m))


def det2(m: np.ndarray) -> complex:
    return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])


def outer(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """|x><y| as a matrix, i.e. outer(x, y) @ h == <y, h> x."""
    return np.outer(x, np.conj(y))


def phase_convention(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the first nonzero component is real positive."""
    v = np.array(v, dtype=complex)
    mags = np.abs(v)
    vmax = float(mags.max())
    if vmax == 0.0:
        return v
    idx = int(np.argmax(mags > _PHASE_EPS * vmax))
    return v * np.conj(v[idx] / mags[idx])


def herm_distance(m) -> float:
    """Frobenius distance of m from its adjoint; zero iff m is Hermitian."""
    m = as_mat2(m)
    return frob(m - dagger(m))


def posdef_check(m, tol: float = DEFAULT_TOL) -> bool:
    """Sylvester positivity test for a Hermitian 2x2 matrix.

    True iff m[0,0] > tol and det(m) > tol.  Raises NotHermitianError when
    the input is not Hermitian within tol.
    """
    m = as_mat2(m)
    hd = herm_distance(m)
    if hd > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: ||m - m^dagger||_F = {hd:.3e} > {tol:.1e}"
        )
    return bool(m[0, 0].real > tol and det2(m).real > tol)


def sqrt_posdef2(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian positive square root of a positive-definite 2x2 matrix.

    Uses the closed form (m + sqrt(det m) I) / sqrt(tr m + 2 sqrt(det m)),
    exact by Cayley-Hamilton.
    """
    m = as_mat2(m)
    if not posdef_check(m, tol):
        raise NotPositiveError("matrix is not positive definite")
    s = float(np.sqrt(det2(m).real))
    denom = float(np.sqrt(m[0, 0].real + m[1, 1].real + 2.0 * s))
    r = (m + s * np.eye(2)) / denom
    return 0.5 * (r + dagger(r))


def inv2(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse by adjugate; requires |det| > tol."""
    m = as_mat2(m)
    d = det2(m)
    if abs(d) <= tol:
        raise SingularMatrixError(f"matrix is numerically singular (|det| = {abs(d):.3e})")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / d


def nullspace2(m, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unit-norm null vector of a numerically rank-1 2x2 matrix.

    Rank is judged from the singular values: rank 1 means
    sigma_min <= tol * sigma_max.  Raises FullRankError for rank 2 and
    ZeroMatrixError when sigma_max <= tol (rank 0: the whole space is null
    and the caller must decide what to do).
    """
    m = as_mat2(m)
    _, s, vh = np.linalg.svd(m)
    if s[0] <= tol:
        raise ZeroMatrixError("matrix is numerically zero: the whole space is its null space")
    if s[1] > tol * s[0]:
        raise FullRankError(
            f"matrix has full numerical rank (sigma_min/sigma_max = {s[1] / s[0]:.3e})"
        )
    return phase_convention(np.conj(vh[1]))


class Eigenpair(NamedTuple):
    value: complex
    vector: np.ndarray
    defective: bool = False


def _rank1_nullvec(m: np.ndarray) -> np.ndarray:
    """Null direction of a (near) rank-1 matrix, from its larger row."""
    row = m[0] if np.linalg.norm(m[0]) >= np.linalg.norm(m[1]) else m[1]
    v = np.array([row[1], -row[0]], dtype=complex)
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return np.array([1.0, 0.0], dtype=complex)
    return v / n


def eig2(m, tol: float = DEFAULT_TOL) -> list[Eigenpair]:
    """Eigenpairs of a 2x2 matrix via the characteristic quadratic.

    Eigenvectors are unit-norm with the phase convention of nullspace2;
    pairs are sorted by (Re, Im) of the eigenvalue.  A defective matrix
    yields a single pair flagged defective=True; a scalar matrix yields the
    canonical basis.
    """
    m = as_mat2(m)
    tr = m[0, 0] + m[1, 1]
    root = np.sqrt(complex(tr * tr - 4.0 * det2(m)))
    scale = max(1.0, frob(m))
    if abs(root) <= tol * scale:
        lam = tr / 2.0
        shifted = m - lam * np.eye(2)
        if frob(shifted) <= tol * scale:
            return [
                Eigenpair(complex(lam), np.array([1.0, 0.0], dtype=complex)),
                Eigenpair(complex(lam), np.array([0.0, 1.0], dtype=complex)),
            ]
        return [Eigenpair(complex(lam), phase_convention(_rank1_nullvec(shifted)), True)]
    pairs = [
        Eigenpair(complex(lam), phase_convention(_rank1_nullvec(m - lam * np.eye(2))))
        for lam in ((tr - root) / 2.0, (tr + root) / 2.0)
    ]
    pairs.sort(key=lambda p: (p.value.real, p.value.imag))
    return pairs


def nullspace4(x, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of a real 4x4 matrix.

    A direction is kept when its singular value is at most tol * sigma_max,
    which bounds the residual ||X v|| of every returned vector by the same
    quantity.  An empty list means the null space is trivial.
    """
    x = as_mat4r(x)
    _, s, vh = np.linalg.svd(x)
    return [vh[i].copy() for i in range(4) if s[i] <= tol * s[0]]
