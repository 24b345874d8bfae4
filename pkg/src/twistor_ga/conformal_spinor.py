"""6-d twistors ``Upsilon = Z W1 W2`` and the spinor representation of the conformal group.

Conformal rotors act on ``Upsilon`` by left multiplication; each closed form
below is the induced action on the 4-d spinor ``Z`` (unit length scale).
"""

from __future__ import annotations

import numpy as np

from .conformal import E, EBAR, ONE6, to_cga
from .config import default_tol
from .ga_core import Multivector
from .sta import G0, G3, GAMMA, I4, IS2, P_MINUS, P_PLUS, SIGMA3, STA, even_basis

I_G0 = I4 * G0
I_G1 = I4 * GAMMA[1]
I_G3 = I4 * G3

W1 = 0.5 * (ONE6 - to_cga(I_G3) * E)
W2 = 0.5 * (ONE6 - to_cga(I_G0) * EBAR)
W12 = W1 * W2


def _require_even(z: Multivector) -> None:
    if z.sig != STA or not z.is_even():
        raise ValueError("expected an even element of Cl(1,3)")


def lift(z: Multivector) -> Multivector:
    """``Upsilon = Z W1 W2``."""
    _require_even(z)
    return to_cga(z) * W12


def in_ideal(u: Multivector, tol: float | None = None) -> bool:
    """Right-ideal membership ``Upsilon W1 W2 == Upsilon``."""
    return (u * W12).isclose(u, tol)


def lift_matrix() -> np.ndarray:
    """64x8 real matrix of :func:`lift` on the even basis of Cl(1,3)."""
    return np.stack([lift(b).coeffs for b in even_basis()], axis=1)


def unlift(u: Multivector, tol: float | None = None) -> Multivector:
    """Least-squares preimage under :func:`lift`; refuses elements outside the image."""
    tol = default_tol() if tol is None else tol
    A = lift_matrix()
    c, *_ = np.linalg.lstsq(A, u.coeffs, rcond=None)
    residual = float(np.max(np.abs(A @ c - u.coeffs)))
    if residual > tol * max(1.0, u.max_abs()):
        raise ValueError(f"element is not a lifted 4-d spinor (residual {residual:.3g})")
    return sum((ci * b for ci, b in zip(c, even_basis())), Multivector.zero(STA))


def spin_translate(z: Multivector, a: Multivector) -> Multivector:
    """``T_a(Z) = Z - a Z I gamma_3 1/2(1+sigma_3)``."""
    return z - a * z * I_G3 * P_PLUS


def spin_rotate(z: Multivector, rotor: Multivector) -> Multivector:
    """``R_0(Z) = R Z``."""
    return rotor * z


def spin_dilate(z: Multivector, alpha: float) -> Multivector:
    """``D_alpha(Z) = Z exp(-alpha sigma_3 / 2)``."""
    return z * (np.cosh(alpha / 2) - np.sinh(alpha / 2) * SIGMA3)


def spin_invert(z: Multivector) -> Multivector:
    """``Z -> Z I sigma_2``; applying it twice gives ``-Z``."""
    return z * IS2


def spin_special_conformal(z: Multivector, a: Multivector) -> Multivector:
    """``K_a(Z) = Z + a Z I gamma_3 1/2(1-sigma_3)``."""
    return z + a * z * I_G3 * P_MINUS


def invert6(u: Multivector) -> Multivector:
    """``-e Upsilon I gamma_1``, the chosen inversion on 6-d twistors."""
    return -(E * u * to_cga(I_G1))


def bivector_action(kind: str, mu: int, psi: Multivector) -> Multivector:
    """Spinor image of left multiplication by ``e gamma_mu`` or ``eb gamma_mu``.

    ``kind='e'``: ``-gamma_mu psi I gamma_3``; ``kind='ebar'``: ``-I gamma_mu psi gamma_0``.
    """
    if mu not in range(4):
        raise ValueError(f"index mu must be in 0..3, got {mu}")
    if kind == "e":
        return -(GAMMA[mu] * psi * I_G3)
    if kind == "ebar":
        return -(I4 * GAMMA[mu] * psi * G0)
    raise ValueError(f"kind must be 'e' or 'ebar', got {kind!r}")


def bivector_generator(kind: str, mu: int) -> Multivector:
    """The 6-d bivector ``e gamma_mu`` or ``eb gamma_mu``."""
    if mu not in range(4):
        raise ValueError(f"index mu must be in 0..3, got {mu}")
    vec = {"e": E, "ebar": EBAR}.get(kind)
    if vec is None:
        raise ValueError(f"kind must be 'e' or 'ebar', got {kind!r}")
    return vec * to_cga(GAMMA[mu])
