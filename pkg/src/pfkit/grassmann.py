"""Grassmann algebra on two generators with Berezin integration.

The algebra on generators (xi, xibar) is four-dimensional over its payload
ring, with canonical monomial basis

    (1, xi, xibar, xibar*xi)

in that order.  Every element stores four coefficients in this basis and
every product is normal-ordered back into it, so xi^2 = xibar^2 = 0 and
xi*xibar = -xibar*xi hold identically -- no symbolic engine is needed.

Payloads (the coefficients) are complex scalars, kets (C^2 vectors), bras
(conjugated row vectors) or 2x2 operators, uniform across the four slots of
one element.  Payloads are *even*: they commute with the generators, so a
mixed term like (A v) xi can be evaluated payload-first regardless of how
the factors were ordered.

Sign conventions, fixed here once for the whole package:

* conjugation swaps the generators (xi <-> xibar), conjugates payloads
  (ket <-> bra, operator -> adjoint) and reverses products, hence
  (xibar xi)* = xibar xi;
* the double Berezin integral int(.) dxi dxibar extracts MINUS the
  (xibar xi) coefficient.  This is the iterated single-variable rule
  (int dxi = 0, int xi dxi = 1) applied innermost-first with each
  generator stripped from the left, and it is the unique sign for which
  the coherent-state kernel integrates to the identity operator
  (see resolution_check).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .algebra import PFSystem, standard_lowering
from .exceptions import ConsistencyCheckError, IncompatiblePayloadsError
from .linalg import as_ket2, as_mat2, dagger


class Payload(enum.Enum):
    SCALAR = "scalar"
    KET = "ket"
    BRA = "bra"
    OPERATOR = "operator"


_SHAPES = {
    Payload.SCALAR: (),
    Payload.KET: (2,),
    Payload.BRA: (2,),
    Payload.OPERATOR: (2, 2),
}

MONOMIALS = ("1", "xi", "xibar", "xibar_xi")

# m_i * m_j -> (slot, sign); missing entries vanish by nilpotency.
_MONO_MUL = {
    (0, 0): (0, 1),
    (0, 1): (1, 1),
    (0, 2): (2, 1),
    (0, 3): (3, 1),
    (1, 0): (1, 1),
    (2, 0): (2, 1),
    (3, 0): (3, 1),
    (1, 2): (3, -1),
    (2, 1): (3, 1),
}

_KIND_MUL = {
    (Payload.SCALAR, Payload.SCALAR): Payload.SCALAR,
    (Payload.SCALAR, Payload.KET): Payload.KET,
    (Payload.SCALAR, Payload.BRA): Payload.BRA,
    (Payload.SCALAR, Payload.OPERATOR): Payload.OPERATOR,
    (Payload.KET, Payload.SCALAR): Payload.KET,
    (Payload.BRA, Payload.SCALAR): Payload.BRA,
    (Payload.OPERATOR, Payload.SCALAR): Payload.OPERATOR,
    (Payload.OPERATOR, Payload.OPERATOR): Payload.OPERATOR,
    (Payload.OPERATOR, Payload.KET): Payload.KET,
    (Payload.BRA, Payload.OPERATOR): Payload.BRA,
    (Payload.KET, Payload.BRA): Payload.OPERATOR,
    (Payload.BRA, Payload.KET): Payload.SCALAR,
}

_CONJ_KIND = {
    Payload.SCALAR: Payload.SCALAR,
    Payload.KET: Payload.BRA,
    Payload.BRA: Payload.KET,
    Payload.OPERATOR: Payload.OPERATOR,
}


@dataclass(frozen=True, eq=False)
class GElem:
    """Element of the two-generator algebra with a uniform payload kind.

    coeffs holds the payloads of (1, xi, xibar, xibar*xi) in canonical
    order.  Use GElem.build or the module helpers rather than the raw
    constructor.
    """

    kind: Payload
    coeffs: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __post_init__(self):
        shape = _SHAPES[self.kind]
        fixed = []
        for c in self.coeffs:
            arr = np.array(c, dtype=complex)
            if arr.shape != shape:
                raise ValueError(
                    f"{self.kind.value} payload must have shape {shape}, got {arr.shape}"
                )
            if not np.all(np.isfinite(arr)):
                raise ValueError("payloads must be finite")
            arr.setflags(write=False)
            fixed.append(arr)
        object.__setattr__(self, "coeffs", tuple(fixed))

    @classmethod
    def build(cls, kind: Payload, one=None, xi=None, xibar=None, xibar_xi=None) -> "GElem":
        shape = _SHAPES[kind]

        def fill(c):
            return np.zeros(shape, dtype=complex) if c is None else c

        return cls(kind, (fill(one), fill(xi), fill(xibar), fill(xibar_xi)))

    @property
    def c_one(self) -> np.ndarray:
        return self.coeffs[0]

    @property
    def c_xi(self) -> np.ndarray:
        return self.coeffs[1]

    @property
    def c_xibar(self) -> np.ndarray:
        return self.coeffs[2]

    @property
    def c_xibar_xi(self) -> np.ndarray:
        return self.coeffs[3]

    def __add__(self, other: "GElem") -> "GElem":
        if not isinstance(other, GElem):
            return NotImplemented
        if other.kind is not self.kind:
            raise IncompatiblePayloadsError(
                f"cannot add {self.kind.value} and {other.kind.value} elements"
            )
        return GElem(self.kind, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GElem") -> "GElem":
        return self + (-other)

    def __neg__(self) -> "GElem":
        return GElem(self.kind, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, GElem):
            return gmul(self, other)
        return GElem(self.kind, tuple(complex(other) * c for c in self.coeffs))

    def __rmul__(self, other):
        return GElem(self.kind, tuple(complex(other) * c for c in self.coeffs))


def g_one() -> GElem:
    return GElem.build(Payload.SCALAR, one=1.0)


def g_xi() -> GElem:
    return GElem.build(Payload.SCALAR, xi=1.0)


def g_xibar() -> GElem:
    return GElem.build(Payload.SCALAR, xibar=1.0)


def from_ket(v) -> GElem:
    return GElem.build(Payload.KET, one=as_ket2(v))


def from_operator(m) -> GElem:
    return GElem.build(Payload.OPERATOR, one=as_mat2(m))


def _payload_product(kx: Payload, ky: Payload, cx: np.ndarray, cy: np.ndarray) -> np.ndarray:
    if kx is Payload.SCALAR or ky is Payload.SCALAR:
        return cx * cy
    if (kx, ky) in ((Payload.OPERATOR, Payload.OPERATOR), (Payload.OPERATOR, Payload.KET)):
        return cx @ cy
    if (kx, ky) == (Payload.BRA, Payload.OPERATOR):
        return cx @ cy
    if (kx, ky) == (Payload.KET, Payload.BRA):
        return np.outer(cx, cy)
    # BRA x KET -> scalar
    return np.asarray(cx @ cy)


def gmul(x: GElem, y: GElem) -> GElem:
    """Product, normal-ordered into the canonical basis with tracked signs.

    Raises IncompatiblePayloadsError when the payload kinds do not compose
    (composable: scalar with anything, operator@ket, ket*bra -> operator,
    bra*ket -> scalar, bra@operator, operator@operator).
    """
    kind = _KIND_MUL.get((x.kind, y.kind))
    if kind is None:
        raise IncompatiblePayloadsError(
            f"cannot multiply a {x.kind.value}-valued element by a {y.kind.value}-valued one"
        )
    shape = _SHAPES[kind]
    out = [np.zeros(shape, dtype=complex) for _ in range(4)]
    for i, ci in enumerate(x.coeffs):
        if not ci.any():
            continue
        for j, cj in enumerate(y.coeffs):
            rule = _MONO_MUL.get((i, j))
            if rule is None or not cj.any():
                continue
            slot, sign = rule
            out[slot] = out[slot] + sign * _payload_product(x.kind, y.kind, ci, cj)
    return GElem(kind, tuple(out))


def conj(x: GElem) -> GElem:
    """Grassmann conjugation: xi <-> xibar, payloads conjugated, products
    reversed (so the xibar*xi slot maps to itself)."""

    def pc(c: np.ndarray) -> np.ndarray:
        if x.kind is Payload.OPERATOR:
            return dagger(c)
        return np.conj(c)

    return GElem(
        _CONJ_KIND[x.kind],
        (pc(x.coeffs[0]), pc(x.coeffs[2]), pc(x.coeffs[1]), pc(x.coeffs[3])),
    )


def berezin(x: GElem) -> np.ndarray:
    """Double Berezin integral int(.) dxi dxibar.

    With the convention fixed in the module docstring this is minus the
    coefficient of xibar*xi.  The result has the payload's shape: a 0-d
    array for scalar elements, a vector for kets/bras, a matrix for
    operators.
    """
    return -np.array(x.coeffs[3])


def gnorm(x: GElem) -> float:
    """Largest absolute value over all payload entries of all four slots."""
    return max(float(np.max(np.abs(c))) for c in x.coeffs)


def gexp(x: GElem) -> GElem:
    """Exponential of an element with no identity component.

    For such elements every third-order monomial product vanishes, so the
    series truncates exactly at 1 + x + x^2/2.
    """
    if x.c_one.any():
        raise ValueError("gexp requires a zero identity component (series must truncate)")
    if x.kind is Payload.OPERATOR:
        ident = from_operator(np.eye(2))
    elif x.kind is Payload.SCALAR:
        ident = g_one()
    else:
        raise IncompatiblePayloadsError("gexp is defined for scalar- or operator-valued elements")
    return ident + x + 0.5 * gmul(x, x)


def coherent_fermion() -> GElem:
    """Eigenstate of the standard fermionic annihilator with eigenvalue xi.

    Returns (1 - xibar*xi/2) f0 + f1 xi as a ket-valued element, checked
    against the exponential form exp(c^dagger xi - xibar c) f0, whose
    series truncates by nilpotency.
    """
    c = standard_lowering()
    f0 = np.array([1.0, 0.0], dtype=complex)
    f1 = np.array([0.0, 1.0], dtype=complex)
    closed = GElem.build(Payload.KET, one=f0, xi=f1, xibar_xi=-0.5 * f0)
    generator = GElem.build(Payload.OPERATOR, xi=dagger(c), xibar=-c)
    exponential = gmul(gexp(generator), from_ket(f0))
    if gnorm(closed - exponential) > 1e-12:
        raise ConsistencyCheckError("coherent-state forms disagree")
    return closed


def bicoherent(system: PFSystem) -> tuple[GElem, GElem]:
    """Bi-coherent pair (phi_xi, psi_xi) for a pseudo-fermion system.

    phi_xi = (1 - xibar*xi/2) phi0 + phi1 xi is the eigenstate of a with
    eigenvalue xi, and psi_xi (same form on the psi basis) the eigenstate
    of b^dagger.  Both are cross-checked against the metric-transformed
    exponential construction S_psi^{-1/2} exp(c^dagger xi - xibar c) f0
    and its S_psi^{+1/2} counterpart.
    """
    phi = GElem.build(
        Payload.KET, one=system.phi0, xi=system.phi1, xibar_xi=-0.5 * system.phi0
    )
    psi = GElem.build(
        Payload.KET, one=system.psi0, xi=system.psi1, xibar_xi=-0.5 * system.psi0
    )

    f0 = system.s_psi_half @ system.phi0
    generator = GElem.build(Payload.OPERATOR, xi=dagger(system.c_op), xibar=-system.c_op)
    base = gmul(gexp(generator), from_ket(f0))
    phi_exp = gmul(from_operator(system.t_op), base)
    psi_exp = gmul(from_operator(system.s_psi_half), base)
    scale = max(gnorm(phi), gnorm(psi), 1.0)
    if gnorm(phi - phi_exp) > 1e-8 * scale or gnorm(psi - psi_exp) > 1e-8 * scale:
        raise ConsistencyCheckError("bi-coherent closed forms disagree with the exponential route")
    return phi, psi


def eigen_relation_residuals(system: PFSystem, phi_xi: GElem, psi_xi: GElem) -> dict[str, float]:
    """Coefficient-wise residuals of a phi_xi = xi phi_xi and
    b^dagger psi_xi = xi psi_xi."""
    xi = g_xi()
    r_phi = gnorm(gmul(from_operator(system.pair.a), phi_xi) - gmul(xi, phi_xi))
    r_psi = gnorm(gmul(from_operator(dagger(system.pair.b)), psi_xi) - gmul(xi, psi_xi))
    return {"annihilator_phi": r_phi, "conjugate_annihilator_psi": r_psi}


def resolution_check(phi_xi: GElem, psi_xi: GElem) -> np.ndarray:
    """Integrate the bi-coherent kernel: int |phi_xi><psi_xi| dxi dxibar.

    The result equals |phi0><psi0| + |phi1><psi1|, the identity for any
    biorthonormal pair of bases.
    """
    kernel = gmul(phi_xi, conj(psi_xi))
    return np.array(berezin(kernel))
