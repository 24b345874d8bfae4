"""Conformal geometric algebra Cl(2,4) over Minkowski space.

Basis order is ``(g0, g1, g2, g3, e, eb)`` in bits 0-5, so a Cl(1,3)
multivector embeds by zero padding.  ``lam`` is the fundamental length
scale; it defaults to 1 but is threaded through because the congruence
geometry identifies it with the helicity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import default_tol
from .ga_core import Multivector, Signature, scalar_product
from .sta import STA

CGA = Signature(2, 4, metric=(1, -1, -1, -1, 1, -1), names=("g0", "g1", "g2", "g3", "e", "eb"))

ONE6 = Multivector.scalar(CGA, 1.0)
E = Multivector.blade(CGA, 1 << 4)
EBAR = Multivector.blade(CGA, 1 << 5)
N_INF = E + EBAR
N_BAR = E - EBAR
#: ``N = e eb``
E_EBAR = E * EBAR
C_GAMMA = tuple(Multivector.blade(CGA, 1 << k) for k in range(4))
I6 = Multivector.blade(CGA, 63)


class PointAtInfinity(ValueError):
    """Raised when a conformal vector has ``X . n == 0``."""


class SingularTransformation(ValueError):
    """Raised when a conformal map is evaluated on its pole."""


def to_cga(a: Multivector) -> Multivector:
    return a if a.sig == CGA else a.embed(CGA)


def _check_minkowski(x: Multivector) -> Multivector:
    x = to_cga(x)
    if not x.is_grade(1) or np.any(np.abs(x.coeffs[[16, 32]]) > 0):
        raise ValueError("expected a Minkowski vector (grade 1, no e/eb part)")
    return x


def minkowski_part(x: Multivector) -> Multivector:
    """Grade-1 ``g0..g3`` part, returned in Cl(1,3)."""
    return Multivector.vector(STA, [x.coeffs[1 << k] for k in range(4)])


@dataclass(frozen=True)
class ConformalPoint:
    X: Multivector
    lam: float = 1.0

    def __post_init__(self) -> None:
        if self.lam <= 0:
            raise ValueError("length scale must be positive")
        if not self.X.is_grade(1):
            raise ValueError("conformal point must be a vector")
        scale = max(1.0, float(np.sum(self.X.coeffs ** 2)))
        if abs(scalar_product(self.X, self.X)) > default_tol() * scale:
            raise ValueError("conformal point must be null")


def embed_euclidean(x: Multivector, lam: float = 1.0) -> ConformalPoint:
    """``F_E(x/lam) = (x^2 n + 2 lam x - lam^2 nbar) / (2 lam^2)``."""
    if lam <= 0:
        raise ValueError("length scale must be positive")
    x = _check_minkowski(x)
    x2 = scalar_product(x, x)
    X = (x2 * N_INF + 2 * lam * x - lam ** 2 * N_BAR) / (2 * lam ** 2)
    return ConformalPoint(X, lam)


def embed_hyperbolic(x: Multivector, lam: float = 1.0, tol: float | None = None) -> ConformalPoint:
    """``F_H(x/lam) = (x^2 n + 2 lam x - lam^2 nbar) / (lam^2 - x^2)``."""
    tol = default_tol() if tol is None else tol
    if lam <= 0:
        raise ValueError("length scale must be positive")
    x = _check_minkowski(x)
    x2 = scalar_product(x, x)
    denom = lam ** 2 - x2
    if abs(denom) <= tol * max(1.0, lam ** 2):
        raise SingularTransformation("x^2 = lam^2: point translated to infinity")
    X = (x2 * N_INF + 2 * lam * x - lam ** 2 * N_BAR) / denom
    return ConformalPoint(X, lam)


def extract_euclidean(X: ConformalPoint | Multivector, lam: float | None = None,
                      tol: float | None = None) -> Multivector:
    """Minkowski point of a (homogeneous) conformal vector, normalising ``X . n = -1``."""
    tol = default_tol() if tol is None else tol
    if isinstance(X, ConformalPoint):
        lam = X.lam if lam is None else lam
        X = X.X
    lam = 1.0 if lam is None else lam
    xn = scalar_product(X, N_INF)
    if abs(xn) <= tol * max(1.0, X.max_abs()):
        raise PointAtInfinity("X . n = 0")
    return lam * minkowski_part(X * (-1.0 / xn))


def extract_hyperbolic(X: ConformalPoint | Multivector, lam: float | None = None,
                       tol: float | None = None) -> Multivector:
    """``u = sum_k lam (X . g_k) g_k / (X . n)`` for the spatial part, plus the time part."""
    tol = default_tol() if tol is None else tol
    if isinstance(X, ConformalPoint):
        lam = X.lam if lam is None else lam
        X = X.X
    lam = 1.0 if lam is None else lam
    xn = scalar_product(X, N_INF)
    if abs(xn) <= tol * max(1.0, X.max_abs()):
        raise PointAtInfinity("X . n = 0")
    out = Multivector.zero(CGA)
    for k, g in enumerate(C_GAMMA):
        out = out + (lam * scalar_product(X, g) / xn) * g
    return minkowski_part(out)


def homogeneous_close(X: Multivector, Y: Multivector, tol: float | None = None) -> bool:
    """``X ~ alpha Y``: normalise each by its largest-magnitude coefficient and compare."""
    tol = default_tol() if tol is None else tol

    def norm(v: Multivector) -> np.ndarray:
        c = v.coeffs
        k = int(np.argmax(np.abs(c)))
        if c[k] == 0:
            return c
        return c / c[k]

    return bool(np.max(np.abs(norm(X) - norm(Y))) <= tol)


# --- rotors -------------------------------------------------------------------

def translation_rotor(a: Multivector, lam: float = 1.0) -> Multivector:
    """``T_a = exp(n a / 2 lam) = 1 + n a / (2 lam)``."""
    a = _check_minkowski(a)
    return ONE6 + (N_INF * a) / (2 * lam)


def hyperbolic_translation_rotor(x: Multivector, lam: float = 1.0) -> Multivector:
    """``T_x = (lam + eb x) / sqrt(lam^2 - x^2)``; requires ``x^2 < lam^2``."""
    x = _check_minkowski(x)
    x2 = scalar_product(x, x)
    if not x2 < lam ** 2:
        raise SingularTransformation("hyperbolic translation needs x^2 < lam^2")
    return (lam * ONE6 + EBAR * x) / np.sqrt(lam ** 2 - x2)


def rotation_about(a: Multivector, rotor: Multivector, lam: float = 1.0) -> Multivector:
    """``R_a = T_a R ~T_a`` for a spacetime rotor ``R``."""
    t = translation_rotor(a, lam)
    return t * to_cga(rotor) * ~t


def dilation_rotor(alpha: float) -> Multivector:
    """``D_alpha = exp(alpha N / 2) = cosh(alpha/2) + sinh(alpha/2) N``."""
    return np.cosh(alpha / 2) * ONE6 + np.sinh(alpha / 2) * E_EBAR


def dilation_about(a: Multivector, alpha: float, lam: float = 1.0) -> Multivector:
    """``T_a D_alpha ~T_a``."""
    t = translation_rotor(a, lam)
    return t * dilation_rotor(alpha) * ~t


def dilation_about_exp(a: Multivector, alpha: float, lam: float = 1.0) -> Multivector:
    """``exp(-alpha A ^ n / 2)`` with ``A = F_E(a/lam)``; ``(A ^ n)^2 = 1``."""
    A = embed_euclidean(a, lam).X
    b = (A ^ N_INF).grade(2)
    return np.cosh(alpha / 2) * ONE6 - np.sinh(alpha / 2) * b


def special_conformal_rotor(a: Multivector, lam: float = 1.0) -> Multivector:
    """``K_a = e T_a e = 1 - nbar a / (2 lam)``."""
    a = _check_minkowski(a)
    return ONE6 - (N_BAR * a) / (2 * lam)


def invert_point(X: ConformalPoint) -> ConformalPoint:
    """Reflection in ``e``: ``-e X e``, swapping origin and infinity."""
    return ConformalPoint(-(E * X.X * E), X.lam)


def special_conformal_image(x: Multivector, a: Multivector, lam: float = 1.0,
                            tol: float | None = None) -> tuple[Multivector, float]:
    """Point ``x lam / (lam^2 + a x)`` (times ``1/lam``) and the conformal prefactor.

    Returns ``(x', f)`` with ``K_a F_E(x/lam) ~K_a = f F_E(x'/lam)``.
    """
    tol = default_tol() if tol is None else tol
    xs = minkowski_part(_check_minkowski(x))
    as_ = minkowski_part(_check_minkowski(a))
    denom = lam ** 2 + as_ * xs
    d2 = (denom * ~denom).scalar_part
    if abs(d2) <= tol:
        raise SingularTransformation("lam^2 + a x is not invertible")
    inv = ~denom / d2
    xp = (xs * lam * inv).grade(1)
    x2 = scalar_product(xs, xs)
    a2 = scalar_product(as_, as_)
    f = 1 + 2 * scalar_product(as_, xs) / lam ** 2 + a2 * x2 / lam ** 4
    return lam * xp, f


# --- lines --------------------------------------------------------------------

@dataclass(frozen=True)
class ConformalLine:
    L: Multivector


def line_through(r: Multivector, K: Multivector) -> ConformalLine:
    """``L = K e eb + r ^ K ^ n`` (unit length scale)."""
    K = _check_minkowski(K)
    if K.max_abs() == 0:
        raise ValueError("line direction must be nonzero")
    r = _check_minkowski(r)
    return ConformalLine((K * E_EBAR + (r ^ K ^ N_INF)).grade(3))


def hyperplane(tau: float) -> Multivector:
    """``P = (g0 + tau n) I6``, the hyperplane ``t = tau``."""
    return (C_GAMMA[0] + tau * N_INF) * I6


def project_line(line: ConformalLine, tau: float, tol: float | None = None) -> ConformalLine:
    """``L_P = L + P L P``: the line plus its mirror image in ``t = tau``."""
    tol = default_tol() if tol is None else tol
    P = hyperplane(tau)
    lp = (line.L + P * line.L * P).grade(3)
    if lp.max_abs() <= tol * max(1.0, line.L.max_abs()):
        raise SingularTransformation("line is orthogonal to the hyperplane")
    return ConformalLine(lp)


def line_direction(line: ConformalLine) -> Multivector:
    """Direction ``d`` from the ``d e eb`` part, i.e. ``<L e eb>_1`` restricted to spacetime."""
    return minkowski_part((line.L * E_EBAR).grade(1))


def line_point(line: ConformalLine) -> Multivector:
    """A point ``q`` with ``q ^ d ^ n`` equal to the moment part of ``L``.

    The solution is fixed up to multiples of ``d``; the minimum-norm
    coefficient vector is returned.
    """
    d = line_direction(line)
    moment = line.L - (to_cga(d) * E_EBAR).grade(3)
    cols = []
    for k in range(4):
        g = C_GAMMA[k]
        cols.append((g ^ to_cga(d) ^ N_INF).coeffs)
    A = np.stack(cols, axis=1)
    q, *_ = np.linalg.lstsq(A, moment.coeffs, rcond=None)
    return Multivector.vector(STA, q)
