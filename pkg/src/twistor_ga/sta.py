"""Spacetime algebra Cl(1,3): named basis, Pauli/Weyl/4-d spinors and observables.

The bivector ``I sigma_3`` plays the role of the unit imaginary.  Complex
numbers only appear at the component-extraction boundary, where
``<M>_s = <M> - <M I sigma_3> I sigma_3`` is reported as the Python complex
``<M> - <M I sigma_3> j``.
"""

from __future__ import annotations

import numpy as np

from .config import default_tol
from .ga_core import Multivector, Signature, scalar_product

STA = Signature(1, 3, names=("g0", "g1", "g2", "g3"))

ONE = Multivector.scalar(STA, 1.0)
G0, G1, G2, G3 = (Multivector.blade(STA, 1 << k) for k in range(4))
GAMMA = (G0, G1, G2, G3)
#: reciprocal frame gamma^mu
GAMMA_UP = (G0, -G1, -G2, -G3)
SIGMA1, SIGMA2, SIGMA3 = (g * G0 for g in (G1, G2, G3))
SIGMA = (SIGMA1, SIGMA2, SIGMA3)
I4 = G0 * G1 * G2 * G3
IS1, IS2, IS3 = (I4 * s for s in SIGMA)

#: chiral idempotents 1/2(1 +- sigma_3)
P_PLUS = 0.5 * (ONE + SIGMA3)
P_MINUS = 0.5 * (ONE - SIGMA3)

_EVEN_MASKS = [m for m in range(16) if bin(m).count("1") % 2 == 0]


def sta_vector(t: float, x: float, y: float, z: float) -> Multivector:
    return Multivector.vector(STA, (t, x, y, z))


def vector_components(v: Multivector) -> np.ndarray:
    """Contravariant components ``v^mu`` of a grade-1 element."""
    return np.array([v.coeffs[1 << k] for k in range(4)])


def relative_vector(x: np.ndarray | tuple[float, float, float]) -> Multivector:
    """``x sigma_1 + y sigma_2 + z sigma_3``."""
    return x[0] * SIGMA1 + x[1] * SIGMA2 + x[2] * SIGMA3


def relative_components(b: Multivector) -> np.ndarray:
    """3-d components of a relative vector (the ``sigma_k`` coefficients)."""
    return np.array([scalar_product(b, s) for s in SIGMA])


def _require_even(psi: Multivector, what: str = "spinor") -> None:
    if psi.sig != STA:
        raise ValueError(f"{what} must live in Cl(1,3)")
    if not psi.is_even():
        raise ValueError(f"{what} must be an even multivector")


# --- projections --------------------------------------------------------------

def s_part(m: Multivector) -> complex:
    """``<M>_s``: the scalar and ``I sigma_3`` terms as ``re + im*1j``."""
    return complex(m.scalar_part, -scalar_product(m, IS3))


def s_part_conj(m: Multivector) -> complex:
    """``<M>_s^*``: the ``<>_{0, -I sigma_3}`` projection."""
    return s_part(m).conjugate()


def complex_to_even(c: complex) -> Multivector:
    """Inverse of :func:`s_part` on the span of ``{1, I sigma_3}``."""
    return c.real + c.imag * IS3


# --- Pauli spinors ------------------------------------------------------------

def pauli_from_components(c0: complex, c1: complex) -> Multivector:
    """``zeta = a0 + a_k I sigma_k`` from ``zeta^0 = a0 + i a3``, ``zeta^1 = -a2 + i a1``."""
    c0, c1 = complex(c0), complex(c1)
    a0, a3 = c0.real, c0.imag
    a2, a1 = -c1.real, c1.imag
    return a0 + a1 * IS1 + a2 * IS2 + a3 * IS3


def pauli_components(zeta: Multivector) -> tuple[complex, complex]:
    return s_part(zeta), s_part(IS2 * zeta)


def is_pauli(zeta: Multivector, tol: float | None = None) -> bool:
    tol = default_tol() if tol is None else tol
    allowed = {0, IS1.coeffs.nonzero()[0][0], IS2.coeffs.nonzero()[0][0], IS3.coeffs.nonzero()[0][0]}
    return all(abs(c) <= tol for m, c in enumerate(zeta.coeffs) if m not in allowed)


SPIN_UP = ONE
SPIN_DOWN = -IS2


# --- Weyl / 4-d spinors -------------------------------------------------------

def weyl_left(omega: Multivector) -> Multivector:
    """``omega 1/2(1+sigma_3)``, the left-handed Weyl spinor."""
    return omega * P_PLUS


def weyl_right(pi: Multivector) -> Multivector:
    """``pi I sigma_2 1/2(1-sigma_3)``, i.e. ``pi 1/2(1+sigma_3) sigma_1``."""
    return pi * IS2 * P_MINUS


def four_spinor(omega: Multivector, pi: Multivector) -> Multivector:
    """Weyl representation ``psi = omega 1/2(1+sigma_3) + pi I sigma_2 1/2(1-sigma_3)``."""
    return weyl_left(omega) + weyl_right(pi)


def two_spinor_components(phi: Multivector) -> tuple[complex, complex, complex, complex]:
    """``(psi^0, psi^1, psi^2, psi^3)`` of a 4-d spinor.

    ``psi^0, psi^1`` are the components of ``omega^A``; ``psi^2 = -conj(pi^1)``
    and ``psi^3 = conj(pi^0)`` carry the primed part.
    """
    _require_even(phi)
    return (
        2 * s_part(phi * P_PLUS),
        2 * s_part(IS2 * phi * P_PLUS),
        -2 * s_part(phi * P_MINUS),
        -2 * s_part(IS2 * phi * P_MINUS),
    )


def conjugate_components(omega: Multivector) -> tuple[complex, complex]:
    """Components ``(bar omega^0', bar omega^1')`` of ``omega 1/2(1+sigma_3) sigma_1``."""
    return 2 * s_part_conj(omega * P_MINUS), 2 * s_part_conj(IS2 * omega * P_MINUS)


def four_spinor_from_components(c: tuple[complex, complex, complex, complex]) -> Multivector:
    """Inverse of :func:`two_spinor_components`."""
    omega = pauli_from_components(c[0], c[1])
    pi = pauli_from_components(complex(c[3]).conjugate(), -complex(c[2]).conjugate())
    return four_spinor(omega, pi)


def weyl_parts(psi: Multivector) -> tuple[Multivector, Multivector]:
    """Recover the Pauli spinors ``(omega, pi)`` with ``psi = four_spinor(omega, pi)``."""
    c = two_spinor_components(psi)
    omega = pauli_from_components(c[0], c[1])
    pi = pauli_from_components(c[3].conjugate(), -c[2].conjugate())
    return omega, pi


def even_basis() -> list[Multivector]:
    """The eight even blades of Cl(1,3), in bitmask order."""
    return [Multivector.blade(STA, m) for m in _EVEN_MASKS]


def even_coefficients(psi: Multivector) -> np.ndarray:
    return psi.coeffs[_EVEN_MASKS].copy()


# --- inner products -----------------------------------------------------------

def spinor_inner_2(omega: Multivector, pi: Multivector) -> complex:
    """``{omega, pi} = <I sigma_2 ~omega pi>_s``; antisymmetric."""
    return s_part(IS2 * ~omega * pi)


def inner_s(psi: Multivector, phi: Multivector) -> complex:
    """``(psi, phi)_s = <~psi phi>_s``."""
    return s_part(~psi * phi)


# --- Dirac matrix actions -----------------------------------------------------

def gamma_action(mu: int, psi: Multivector) -> Multivector:
    """``gamma_mu psi gamma_0``."""
    if mu not in range(4):
        raise ValueError(f"index mu must be in 0..3, got {mu}")
    return GAMMA[mu] * psi * G0


def i_action(psi: Multivector) -> Multivector:
    return psi * IS3


def gamma5_action(psi: Multivector) -> Multivector:
    return psi * SIGMA3


# --- observables --------------------------------------------------------------

def dirac_current(psi: Multivector) -> Multivector:
    """``J = psi gamma_0 ~psi``."""
    return (psi * G0 * ~psi).grade(1)


def spin_bivector(psi: Multivector) -> Multivector:
    """``S = 1/2 psi I sigma_3 ~psi``; the grade-0/4 parts vanish identically."""
    return 0.5 * (psi * IS3 * ~psi)


def tensor_components(b: Multivector) -> np.ndarray:
    """``S^{mu nu} = -S . (gamma^mu ^ gamma^nu)``."""
    out = np.zeros((4, 4))
    for mu in range(4):
        for nu in range(4):
            out[mu, nu] = -scalar_product(b, GAMMA_UP[mu] ^ GAMMA_UP[nu])
    return out


def flagpole(omega: Multivector) -> Multivector:
    """``K = 1/2 omega (gamma_0 + gamma_3) ~omega``, a future-pointing null vector."""
    return (0.5 * (omega * (G0 + G3) * ~omega)).grade(1)


def hermitian_components(v: Multivector, tol: float | None = None) -> np.ndarray:
    """2x2 Hermitian matrix ``[[v0+v3, v1-i v2], [v1+i v2, v0-v3]]``."""
    if v.sig != STA or not v.is_grade(1, tol):
        raise ValueError("hermitian_components expects a Cl(1,3) vector")
    t, x, y, z = vector_components(v)
    return np.array([[t + z, x - 1j * y], [x + 1j * y, t - z]])


def minkowski_square(v: Multivector) -> float:
    return scalar_product(v, v)
