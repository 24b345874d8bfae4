"""Independent matrix representation of ``Cl(p, q)`` built from Kronecker products.

Generators come from the Jordan-Wigner construction on Pauli matrices; a
generator squaring to ``-1`` is multiplied by ``1j``.  Odd dimensions borrow
one spare generator so the representation stays faithful.  Nothing here
touches the bitmask sign tables in :mod:`twistor_ga.ga_core`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .ga_core import Multivector, Signature, geometric_product

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def _kron(*factors: np.ndarray) -> np.ndarray:
    return reduce(np.kron, factors)


def euclidean_generators(count: int) -> list[np.ndarray]:
    """``count`` mutually anticommuting Hermitian matrices squaring to the identity."""
    pairs = (count + 1) // 2
    gens = []
    for j in range(pairs):
        left = [_Z] * j
        right = [_I2] * (pairs - j - 1)
        gens.append(_kron(*left, _X, *right))
        gens.append(_kron(*left, _Y, *right))
    return gens[:count]


@dataclass(frozen=True)
class MatrixOracle:
    sig: Signature
    generators: tuple[np.ndarray, ...]
    blades: tuple[np.ndarray, ...]

    @property
    def size(self) -> int:
        return self.generators[0].shape[0]

    def to_matrix(self, a: Multivector) -> np.ndarray:
        if a.sig != self.sig:
            raise ValueError("signature mismatch")
        return np.tensordot(a.coeffs, np.stack(self.blades), axes=1)

    def scalar_part(self, m: np.ndarray) -> float:
        """Every non-scalar blade matrix is traceless, so the trace isolates ``<A>_0``."""
        return float(np.trace(m).real / self.size)

    def from_matrix(self, m: np.ndarray) -> Multivector:
        """Recover coefficients via ``<B_k^{-1} A>_0`` for each blade."""
        coeffs = []
        for b in self.blades:
            binv = np.linalg.inv(b)
            coeffs.append(self.scalar_part(binv @ m))
        return Multivector(self.sig, coeffs)

    def rank(self) -> int:
        flat = np.stack([np.concatenate([b.real.ravel(), b.imag.ravel()]) for b in self.blades])
        return int(np.linalg.matrix_rank(flat))

    def product_residual(self, a: Multivector, b: Multivector) -> float:
        """Max entrywise gap between ``rep(a*b)`` and ``rep(a) @ rep(b)``."""
        lhs = self.to_matrix(geometric_product(a, b))
        rhs = self.to_matrix(a) @ self.to_matrix(b)
        return float(np.max(np.abs(lhs - rhs)))


def matrix_oracle(sig: Signature) -> MatrixOracle:
    count = sig.dim + (sig.dim % 2)
    base = euclidean_generators(count)[: sig.dim]
    gens = tuple(g if s > 0 else 1j * g for g, s in zip(base, sig.squares))
    eye = np.eye(gens[0].shape[0], dtype=complex)
    blades = []
    for mask in range(sig.size):
        m = eye
        for k in range(sig.dim):
            if mask >> k & 1:
                m = m @ gens[k]
        blades.append(m)
    return MatrixOracle(sig, gens, tuple(blades))
