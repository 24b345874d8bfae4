"""1-valence twistors as translated 4-d spinors, with their massless-particle observables.

Units: hbar = c = 1, so helicity is dimensionless and positions carry the
unit of length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import default_tol
from .ga_core import Multivector
from .sta import (
    G0,
    G3,
    I4,
    IS2,
    IS3,
    P_MINUS,
    P_PLUS,
    STA,
    inner_s,
    spin_bivector,
    weyl_parts,
)

I_G3 = I4 * G3


def translate_spinor(psi: Multivector, r: Multivector) -> Multivector:
    """``T_{-r}(psi) = psi + r psi I gamma_3 1/2(1+sigma_3)``."""
    return psi + r * psi * I_G3 * P_PLUS


@dataclass(frozen=True)
class Twistor:
    """A 4-d spinor ``psi`` at the origin, translated to position ``r``."""

    psi: Multivector
    r: Multivector

    def __post_init__(self) -> None:
        if self.psi.sig != STA or not self.psi.is_even():
            raise ValueError("twistor spinor must be an even element of Cl(1,3)")
        if self.r.sig != STA or not self.r.is_grade(1):
            raise ValueError("twistor position must be a Cl(1,3) vector")

    @cached_property
    def z(self) -> Multivector:
        return translate_spinor(self.psi, self.r)

    def at(self, r: Multivector) -> "Twistor":
        return Twistor(self.psi, r)

    def with_phase(self, theta: float) -> "Twistor":
        """``psi -> psi exp(I sigma_3 theta)``."""
        return Twistor(self.psi * (np.cos(theta) + np.sin(theta) * IS3), self.r)

    def scaled(self, lam: float) -> "Twistor":
        return Twistor(lam * self.psi, self.r)


def twistor_new(psi: Multivector, r: Multivector | None = None) -> Twistor:
    return Twistor(psi, Multivector.zero(STA) if r is None else r)


def primary_part(t: Twistor) -> Multivector:
    """``omega_P = Z 1/2(1+sigma_3)``."""
    return t.z * P_PLUS


def projection_part(t: Twistor) -> Multivector:
    """``Z 1/2(1-sigma_3) = pi I sigma_2 1/2(1-sigma_3)``, independent of ``r``."""
    return t.z * P_MINUS


def helicity_complex(t: Twistor) -> complex:
    """``-<~Z Z>_s``; the ``I sigma_3`` part is reported rather than dropped."""
    return -inner_s(t.z, t.z)


def helicity(t: Twistor) -> float:
    """``s = -<~Z Z>_s = -<~psi psi>``.

    Both routes are evaluated; they must agree since translation preserves
    the spinor inner product.
    """
    from_z = helicity_complex(t)
    from_psi = -(~t.psi * t.psi).scalar_part
    scale = max(1.0, abs(from_psi))
    if abs(from_z.real - from_psi) > 1e2 * default_tol() * scale or abs(from_z.imag) > 1e2 * default_tol() * scale:
        raise ArithmeticError(f"helicity routes disagree: {from_z} vs {from_psi}")
    return float(from_psi)


def momentum(t: Twistor) -> Multivector:
    """``p = 1/2 Z (gamma_0 - gamma_3) ~Z``."""
    return (0.5 * (t.z * (G0 - G3) * ~t.z)).grade(1)


def momentum_forms(t: Twistor) -> tuple[Multivector, Multivector, Multivector]:
    """The three equivalent momentum expressions: from ``pi``, ``psi`` and ``Z``."""
    _, pi = weyl_parts(t.psi)
    via_pi = (0.5 * (pi * (G0 + G3) * ~pi)).grade(1)
    via_psi = (0.5 * (t.psi * (G0 - G3) * ~t.psi)).grade(1)
    return via_pi, via_psi, momentum(t)


def angular_momentum(t: Twistor) -> Multivector:
    """``M = 1/2 Z I sigma_3 ~Z``."""
    return (0.5 * (t.z * IS3 * ~t.z)).grade(2)


def angular_momentum_origin(t: Twistor) -> Multivector:
    """``M_0``: the spin bivector of ``psi``."""
    return spin_bivector(t.psi).grade(2)


def angular_momentum_decomposed(t: Twistor) -> Multivector:
    """``M_0 - r ^ p``."""
    return angular_momentum_origin(t) - (t.r ^ momentum(t))


def pauli_lubanski(t: Twistor) -> Multivector:
    """``S = -2 I (p ^ M)``."""
    p = momentum(t)
    return (-2.0 * (I4 * (p ^ angular_momentum(t)))).grade(1)


def pauli_lubanski_dual(t: Twistor) -> Multivector:
    """``S = 2 p . (I M)``."""
    p = momentum(t)
    return (2.0 * (p | (I4 * angular_momentum(t)))).grade(1)


@dataclass(frozen=True)
class TwistorObservables:
    helicity: float
    momentum: Multivector
    angular_momentum: Multivector
    pauli_lubanski: Multivector


def observables(t: Twistor) -> TwistorObservables:
    return TwistorObservables(helicity(t), momentum(t), angular_momentum(t), pauli_lubanski(t))


def reconstruct_check(p: Multivector, m: Multivector, t: Twistor, theta: float,
                      tol: float | None = None) -> bool:
    """True when ``t`` rephased by ``exp(I sigma_3 theta)`` still yields ``(p, M)``.

    ``(p, M)`` fix the twistor only up to this phase.
    """
    tol = default_tol() if tol is None else tol
    t2 = t.with_phase(theta)
    return momentum(t2).isclose(p, tol) and angular_momentum(t2).isclose(m, tol)


def example_psi(s: float) -> Multivector:
    """``psi_eg = -I sigma_2 s 1/2(1+sigma_3) + I sigma_2 1/2(1-sigma_3)``, helicity ``s``."""
    return -s * (IS2 * P_PLUS) + IS2 * P_MINUS


def example_twistor(s: float, r: Multivector | None = None) -> Twistor:
    return twistor_new(example_psi(s), r)
