"""Dense real Clifford algebra kernel for signatures of dimension at most 6.

A multivector is stored as ``2**dim`` real coefficients indexed by blade
bitmask: bit ``k`` set means basis vector ``e_k`` is a factor, and blades are
oriented in ascending index order.  Products are evaluated from cached
sign/index tables, so every operation is a handful of numpy gathers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from numbers import Real
from typing import Iterable, Sequence

import numpy as np

from .config import default_tol

MAX_DIM = 6


class SignatureMismatch(ValueError):
    """Raised when two multivectors from different algebras are combined."""


class NotABlade(ValueError):
    """Raised by :func:`rotor_exp` for bivectors with ``B ^ B != 0``."""


@dataclass(frozen=True)
class Signature:
    """Metric signature ``(p, q)`` with an optional explicit basis ordering.

    Without ``metric`` the first ``p`` basis vectors square to ``+1`` and the
    remaining ``q`` to ``-1``.  ``metric`` lets the conformal algebra keep the
    spacetime vectors in bits 0-3, e.g. ``(1, -1, -1, -1, 1, -1)``.
    """

    p: int
    q: int
    metric: tuple[int, ...] | None = field(default=None)
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0:
            raise ValueError(f"p and q must be non-negative, got ({self.p}, {self.q})")
        if not 1 <= self.p + self.q <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {self.p + self.q}")
        if self.metric is not None:
            m = tuple(int(x) for x in self.metric)
            if len(m) != self.dim or any(x not in (1, -1) for x in m):
                raise ValueError(f"metric must be {self.dim} entries of +-1, got {self.metric}")
            if m.count(1) != self.p:
                raise ValueError(f"metric {m} does not have signature ({self.p}, {self.q})")
            object.__setattr__(self, "metric", m)
        if self.names is not None and len(self.names) != self.dim:
            raise ValueError("one name per basis vector is required")

    @property
    def dim(self) -> int:
        return self.p + self.q

    @property
    def size(self) -> int:
        return 1 << self.dim

    @property
    def squares(self) -> tuple[int, ...]:
        if self.metric is not None:
            return self.metric
        return (1,) * self.p + (-1,) * self.q

    def basis_names(self) -> tuple[str, ...]:
        if self.names is not None:
            return self.names
        return tuple(f"e{k}" for k in range(self.dim))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenated factor lists of blades ``a`` and ``b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += _popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


class _Tables:
    """Product tables for one signature, laid out as ``c[k] = sum_i T[k, i] a[i] b[idx[k, i]]``."""

    def __init__(self, sig: Signature) -> None:
        size = sig.size
        squares = sig.squares
        blades = np.arange(size)
        self.grade = np.array([_popcount(i) for i in range(size)])
        sign = np.empty((size, size))
        for i in range(size):
            for j in range(size):
                s = _reorder_sign(i, j)
                common = i & j
                k = 0
                while common:
                    if common & 1 and squares[k] < 0:
                        s = -s
                    common >>= 1
                    k += 1
                sign[i, j] = s
        # b index for result blade k and left blade i
        self.idx = blades[None, :] ^ blades[:, None]
        self.gp = sign[blades[None, :], self.idx]
        gi = self.grade[None, :]
        gj = self.grade[self.idx]
        gk = self.grade[:, None]
        self.op = np.where(gk == gi + gj, self.gp, 0.0)
        self.ip = np.where(gk == np.abs(gi - gj), self.gp, 0.0)
        self.rev = np.array([(-1.0) ** (g * (g - 1) // 2) for g in self.grade])


@lru_cache(maxsize=None)
def _tables(sig: Signature) -> _Tables:
    return _Tables(sig)


def _product(table: np.ndarray, idx: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("ki,i,ki->k", table, a, b[idx])


class Multivector:
    """Immutable element of ``Cl(p, q)``.

    Operators: ``*`` geometric product (or scaling by a real), ``^`` outer
    product, ``|`` inner product, ``~`` reverse.
    """

    __slots__ = ("sig", "coeffs")
    __array_ufunc__ = None

    def __init__(self, sig: Signature, coeffs: Iterable[float] | np.ndarray) -> None:
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (sig.size,):
            raise ValueError(f"expected {sig.size} coefficients, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("multivector coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    def __reduce__(self):
        # rebuild through __init__ so pickling (process pools) respects immutability
        return (Multivector, (self.sig, self.coeffs.copy()))

    # construction -------------------------------------------------------
    @classmethod
    def scalar(cls, sig: Signature, value: float = 1.0) -> "Multivector":
        c = np.zeros(sig.size)
        c[0] = value
        return cls(sig, c)

    @classmethod
    def zero(cls, sig: Signature) -> "Multivector":
        return cls(sig, np.zeros(sig.size))

    @classmethod
    def blade(cls, sig: Signature, mask: int, value: float = 1.0) -> "Multivector":
        if not 0 <= mask < sig.size:
            raise ValueError(f"blade mask {mask} out of range for dim {sig.dim}")
        c = np.zeros(sig.size)
        c[mask] = value
        return cls(sig, c)

    @classmethod
    def vector(cls, sig: Signature, components: Sequence[float]) -> "Multivector":
        if len(components) > sig.dim:
            raise ValueError(f"at most {sig.dim} vector components, got {len(components)}")
        c = np.zeros(sig.size)
        for k, x in enumerate(components):
            c[1 << k] = x
        return cls(sig, c)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.sig != self.sig:
                raise SignatureMismatch(f"{self.sig} vs {other.sig}")
            return other
        if isinstance(other, Real):
            return Multivector.scalar(self.sig, float(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self.coeffs + o.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, self.coeffs - o.coeffs)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Multivector(self.sig, o.coeffs - self.coeffs)

    def __neg__(self):
        return Multivector(self.sig, -self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Real):
            return Multivector(self.sig, self.coeffs * float(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return Multivector(self.sig, self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return Multivector(self.sig, self.coeffs / float(other))
        return NotImplemented

    def __xor__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return outer_product(self, other)

    def __or__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return inner_product(self, other)

    def __invert__(self):
        return reverse(self)

    # queries ------------------------------------------------------------
    def __call__(self, k: int) -> "Multivector":
        return grade_projection(self, k)

    def grade(self, k: int) -> "Multivector":
        return grade_projection(self, k)

    @property
    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def grades(self, tol: float | None = None) -> set[int]:
        """Grades carrying a coefficient above ``tol`` in magnitude."""
        tol = default_tol() if tol is None else tol
        g = _tables(self.sig).grade
        return {int(x) for x in np.unique(g[np.abs(self.coeffs) > tol])}

    def is_even(self, tol: float | None = None) -> bool:
        return all(k % 2 == 0 for k in self.grades(tol))

    def is_grade(self, k: int, tol: float | None = None) -> bool:
        return self.grades(tol) <= {k}

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def isclose(self, other, tol: float | None = None) -> bool:
        tol = default_tol() if tol is None else tol
        o = self._coerce(other)
        return bool(np.max(np.abs(self.coeffs - o.coeffs)) <= tol)

    def __eq__(self, other):
        if isinstance(other, (Multivector, Real)):
            o = self._coerce(other)
            return bool(np.array_equal(self.coeffs, o.coeffs))
        return NotImplemented

    __hash__ = None

    def embed(self, sig: Signature) -> "Multivector":
        """Zero-pad into a larger algebra whose leading basis vectors share this metric."""
        if sig.dim < self.sig.dim or sig.squares[: self.sig.dim] != self.sig.squares:
            raise SignatureMismatch(f"cannot embed {self.sig} into {sig}")
        c = np.zeros(sig.size)
        c[: self.sig.size] = self.coeffs
        return Multivector(sig, c)

    def restrict(self, sig: Signature, tol: float | None = None) -> "Multivector":
        """Inverse of :meth:`embed`; refuses if blades outside ``sig`` are populated."""
        tol = default_tol() if tol is None else tol
        if sig.dim > self.sig.dim or self.sig.squares[: sig.dim] != sig.squares:
            raise SignatureMismatch(f"cannot restrict {self.sig} to {sig}")
        rest = self.coeffs[sig.size:]
        if rest.size and np.max(np.abs(rest)) > tol:
            raise ValueError("multivector has components outside the target subalgebra")
        return Multivector(sig, self.coeffs[: sig.size])

    def __repr__(self) -> str:
        names = self.sig.basis_names()
        terms = []
        for mask, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            label = "".join(names[k] for k in range(self.sig.dim) if mask >> k & 1)
            terms.append(f"{c:+.6g}" + (f"*{label}" if label else ""))
        return "Multivector(" + (" ".join(terms) if terms else "0") + ")"


def _check(a: Multivector, b: Multivector) -> _Tables:
    if a.sig != b.sig:
        raise SignatureMismatch(f"{a.sig} vs {b.sig}")
    return _tables(a.sig)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    t = _check(a, b)
    return Multivector(a.sig, _product(t.gp, t.idx, a.coeffs, b.coeffs))


def outer_product(a: Multivector, b: Multivector) -> Multivector:
    """``<A_r B_s>_{r+s}`` summed over homogeneous parts."""
    t = _check(a, b)
    return Multivector(a.sig, _product(t.op, t.idx, a.coeffs, b.coeffs))


def inner_product(a: Multivector, b: Multivector) -> Multivector:
    """``<A_r B_s>_{|r-s|}`` summed over homogeneous parts.

    Scalars are not annihilated: ``1 | B == B``.
    """
    t = _check(a, b)
    return Multivector(a.sig, _product(t.ip, t.idx, a.coeffs, b.coeffs))


def grade_projection(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.sig.dim:
        raise ValueError(f"grade {k} out of range 0..{a.sig.dim}")
    g = _tables(a.sig).grade
    return Multivector(a.sig, np.where(g == k, a.coeffs, 0.0))


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.sig, a.coeffs * _tables(a.sig).rev)


def sandwich(v: Multivector, a: Multivector) -> Multivector:
    """``V A ~V``."""
    return v * a * ~v


def scalar_product(a: Multivector, b: Multivector) -> float:
    """``<A B>_0`` without forming the full product."""
    t = _check(a, b)
    return float(np.dot(t.gp[0] * a.coeffs, b.coeffs[t.idx[0]]))


def pseudoscalar(sig: Signature) -> Multivector:
    return Multivector.blade(sig, sig.size - 1)


def basis_vectors(sig: Signature) -> tuple[Multivector, ...]:
    return tuple(Multivector.blade(sig, 1 << k) for k in range(sig.dim))


def is_rotor(r: Multivector, tol: float | None = None) -> bool:
    """Even and ``R ~R == 1`` within ``tol``."""
    tol = default_tol() if tol is None else tol
    return r.is_even(tol) and (r * ~r).isclose(1.0, tol)


def rotor_exp(b: Multivector, lam: float = 1.0, tol: float | None = None) -> Multivector:
    """``exp(-lam * B / 2)`` for a 2-blade ``B`` in closed form.

    The branch is picked by the sign of the scalar ``B**2``: trigonometric,
    hyperbolic, or the nilpotent ``1 - lam B / 2``.
    """
    tol = default_tol() if tol is None else tol
    if not b.is_grade(2, tol):
        raise ValueError("rotor_exp expects a bivector")
    if (b ^ b).max_abs() > tol:
        raise NotABlade("B ^ B != 0: only blade exponentials are supported")
    sq = scalar_product(b, b)
    c = -0.5 * lam
    if abs(sq) <= tol:
        return 1.0 + c * b
    root = np.sqrt(abs(sq))
    if sq < 0:
        return np.cos(c * root) + (np.sin(c * root) / root) * b
    return np.cosh(c * root) + (np.sinh(c * root) / root) * b


def exp_series(a: Multivector, terms: int = 40) -> Multivector:
    """Truncated power series of ``exp(A)``; test oracle for the closed forms."""
    out = Multivector.scalar(a.sig, 1.0)
    term = Multivector.scalar(a.sig, 1.0)
    for k in range(1, terms):
        term = term * a / k
        out = out + term
    return out


def random_multivector(sig: Signature, rng: np.random.Generator, grades: Iterable[int] | None = None,
                       scale: float = 1.0, uniform: bool = False) -> Multivector:
    """Gaussian (or ``U(-scale, scale)``) coefficients, optionally restricted to ``grades``."""
    if uniform:
        c = rng.uniform(-scale, scale, size=sig.size)
    else:
        c = rng.normal(scale=scale, size=sig.size)
    if grades is not None:
        keep = np.isin(_tables(sig).grade, list(grades))
        c = np.where(keep, c, 0.0)
    return Multivector(sig, c)


def blade_grades(sig: Signature) -> np.ndarray:
    return _tables(sig).grade.copy()
