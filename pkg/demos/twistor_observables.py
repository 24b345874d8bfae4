"""Observables of a twistor: helicity, momentum, angular momentum and the Pauli-Lubanski vector.

Builds the helicity-s example twistor, moves it away from the origin and
shows which quantities depend on the base point.
"""

import numpy as np

from twistor_ga.sta import sta_vector, vector_components
from twistor_ga.twistor import (
    angular_momentum,
    angular_momentum_decomposed,
    example_twistor,
    helicity,
    momentum,
    pauli_lubanski,
)


def show(label, t):
    p = momentum(t)
    s_vec = pauli_lubanski(t)
    print(f"{label}")
    print(f"  helicity        {helicity(t): .6f}")
    print(f"  momentum        {np.round(vector_components(p), 6)}")
    print(f"  p.p             {(p | p).scalar_part: .2e}")
    print(f"  Pauli-Lubanski  {np.round(vector_components(s_vec), 6)}")


def main():
    s = 0.75
    t0 = example_twistor(s)
    show(f"example twistor, s = {s}, at the origin", t0)

    r = sta_vector(0.0, 1.0, -0.5, 2.0)
    t1 = example_twistor(s, r)
    show("same spinor, base point r = (0, 1, -0.5, 2)", t1)

    # M changes with r, and only through the orbital term r ^ p
    gap = (angular_momentum(t1) - angular_momentum_decomposed(t1)).max_abs()
    print(f"|M - (M_0 - r ^ p)|  {gap:.2e}")

    # S = s p holds wherever the twistor sits
    for t in (t0, t1):
        res = (pauli_lubanski(t) - helicity(t) * momentum(t)).max_abs()
        print(f"|S - s p|           {res:.2e}")

    # a phase exp(I sigma_3 theta) is invisible to every observable
    t2 = t1.with_phase(0.9)
    print(f"phase shift changes p by {(momentum(t2) - momentum(t1)).max_abs():.2e}, "
          f"M by {(angular_momentum(t2) - angular_momentum(t1)).max_abs():.2e}")


if __name__ == "__main__":
    main()
