"""A null twistor as a light ray, and the same ray as a 6-d line observable.

The zero-helicity twistor omega = (1, 0), pi = (1, i) picks out the ray
r(h) = K / beta + h p.  Translating or inverting the 6-d twistor moves
that line the way a conformal map should.
"""

import numpy as np

from twistor_ga.congruence import (
    null_ray,
    primary_residual,
    ray_observable,
    ray_observable_expanded,
    transform_observable,
)
from twistor_ga.sta import four_spinor, pauli_from_components, sta_vector, vector_components
from twistor_ga.twistor import helicity, twistor_new
from twistor_ga.verification import observable_line


def main():
    psi = four_spinor(pauli_from_components(1, 0), pauli_from_components(1, 1j))
    t = twistor_new(psi)
    print(f"helicity {helicity(t):.1e}")

    ray = null_ray(t)
    print(f"beta {ray.beta:+.6f}")
    print(f"base point q {np.round(vector_components(ray.q), 6)}")
    print(f"direction  p {np.round(vector_components(ray.p), 6)}")
    print(f"primary part along the ray: {primary_residual(t, ray, np.linspace(-2, 2, 9)):.1e}")

    L = ray_observable(psi)
    print(f"observable matches 1/2 (M_0 ^ n + p e eb) to {(L - ray_observable_expanded(psi)).max_abs():.1e}")

    point, direction = observable_line(L)
    print(f"line from the observable: point {np.round(vector_components(point), 6)}, "
          f"direction {np.round(vector_components(direction), 6)}")

    a = sta_vector(0.3, -1.0, 0.5, 0.2)
    moved, _ = observable_line(transform_observable(psi, translate=a))
    # the translated line passes through q + a: the offset is parallel to p
    miss = ((moved - (ray.q + a)) ^ ray.p).max_abs()
    print(f"translated line misses q + a by {miss:.1e}")

    inv_point, inv_dir = observable_line(transform_observable(psi, invert=True))
    print(f"inverted line: point {np.round(vector_components(inv_point), 6)}, "
          f"direction {np.round(vector_components(inv_dir), 6)}")


if __name__ == "__main__":
    main()
