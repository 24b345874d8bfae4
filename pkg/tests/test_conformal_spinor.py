import math

import numpy as np
import pytest

from twistor_ga.conformal import (
    CGA,
    E,
    EBAR,
    dilation_rotor,
    special_conformal_rotor,
    to_cga,
    translation_rotor,
)
from twistor_ga.conformal_spinor import (
    I_G3,
    W1,
    W2,
    W12,
    bivector_action,
    bivector_generator,
    in_ideal,
    invert6,
    lift,
    lift_matrix,
    spin_dilate,
    spin_invert,
    spin_rotate,
    spin_special_conformal,
    spin_translate,
    unlift,
)
from twistor_ga.ga_core import Multivector, rotor_exp
from twistor_ga.sta import G0, G3, I4, IS3, ONE, SIGMA3, STA, inner_s, s_part
from twistor_ga.twistor import helicity, twistor_new

from conftest import TOL, close, rand_even, rand_vec


def rand_rotor(rng):
    out = ONE
    for _ in range(2):
        out = out * rotor_exp((rand_vec(rng) ^ rand_vec(rng)).grade(2), float(rng.uniform(-1, 1)))
    return out


class TestLift:
    def test_examples(self):
        assert lift(Multivector.zero(STA)).max_abs() == 0
        assert close(lift(ONE), W12)

    def test_projectors(self):
        assert close(W1 * W1, W1) and close(W2 * W2, W2)
        assert close(W12 * W12, W12)

    def test_injective(self):
        assert lift_matrix().shape == (64, 8)
        assert np.linalg.matrix_rank(lift_matrix()) == 8

    def test_ideal_and_unlift(self, rng):
        z = rand_even(rng)
        u = lift(z)
        assert in_ideal(u)
        assert close(unlift(u), z)
        with pytest.raises(ValueError):
            unlift(Multivector.scalar(CGA, 1.0))

    def test_requires_even(self):
        with pytest.raises(ValueError):
            lift(G0)


class TestActions:
    def test_trivial_parameters(self, rng):
        z = rand_even(rng)
        assert close(spin_translate(z, 0 * G0), z)
        assert close(spin_rotate(z, ONE), z)
        assert close(spin_dilate(z, 0.0), z)
        assert close(spin_special_conformal(z, 0 * G0), z)

    def test_six_dimensional_consistency(self, rng):
        for _ in range(50):
            z, a, alpha, R = rand_even(rng), rand_vec(rng), float(rng.uniform(-1, 1)), rand_rotor(rng)
            u = lift(z)
            assert close(lift(spin_translate(z, a)), translation_rotor(a) * u)
            assert close(lift(spin_rotate(z, R)), to_cga(R) * u)
            assert close(lift(spin_dilate(z, alpha)), dilation_rotor(alpha) * u)
            assert close(lift(spin_special_conformal(z, a)), special_conformal_rotor(a) * u)
            assert close(invert6(u), lift(spin_invert(z)))

    def test_ideal_stability(self, rng):
        z, a = rand_even(rng), rand_vec(rng)
        for rotor in (translation_rotor(a), dilation_rotor(0.3), special_conformal_rotor(a), to_cga(rand_rotor(rng))):
            v = rotor * lift(z)
            assert in_ideal(v)
            unlift(v)

    def test_full_turn_flips_sign(self, rng):
        z = rand_even(rng)
        assert close(spin_rotate(z, rotor_exp(IS3, 2 * math.pi)), -z)

    def test_dilation_keeps_helicity(self, rng):
        z = rand_even(rng)
        assert abs(helicity(twistor_new(spin_dilate(z, 0.8))) - helicity(twistor_new(z))) <= TOL

    def test_dilation_inner_product(self, rng):
        # the reverse flips the sign of sigma_3, so the two factors conjugate rather than add
        psi, phi, alpha = rand_even(rng), rand_even(rng), 0.45
        lhs = inner_s(spin_dilate(psi, alpha), spin_dilate(phi, alpha))
        half = math.cosh(alpha / 2) + math.sinh(alpha / 2) * SIGMA3
        literal = s_part(half * ~psi * phi * ~half)
        assert abs(lhs - literal) <= TOL
        assert abs(lhs - inner_s(psi, phi)) <= TOL

    def test_translation_and_rotation_preserve_inner_product(self, rng):
        psi, phi, a, R = rand_even(rng), rand_even(rng), rand_vec(rng), rand_rotor(rng)
        ref = inner_s(psi, phi)
        assert abs(inner_s(spin_translate(psi, a), spin_translate(phi, a)) - ref) <= TOL
        assert abs(inner_s(spin_rotate(psi, R), spin_rotate(phi, R)) - ref) <= 1e-9


class TestInversion:
    def test_double_inversion(self, rng):
        z = rand_even(rng)
        assert close(spin_invert(spin_invert(z)), -z)

    def test_intertwines_dilation(self, rng):
        z = rand_even(rng)
        for alpha in rng.uniform(-1, 1, 5):
            assert close(spin_dilate(spin_invert(z), alpha), spin_invert(spin_dilate(z, -alpha)))

    def test_sign_flaw(self, rng):
        for _ in range(20):
            z, a = rand_even(rng), rand_vec(rng)
            chain = spin_invert(spin_translate(spin_invert(z), a))
            k = spin_special_conformal(z, a)
            assert close(chain, -k)
            assert (chain - k).max_abs() > 1e-3
            u = lift(z)
            assert close(invert6(translation_rotor(a) * invert6(u)), -(special_conformal_rotor(a) * u))


class TestBivectorMaps:
    @pytest.mark.parametrize("kind", ["e", "ebar"])
    @pytest.mark.parametrize("mu", range(4))
    def test_exhaustive(self, kind, mu, rng):
        for _ in range(10):
            psi = rand_even(rng)
            assert close(lift(bivector_action(kind, mu, psi)), bivector_generator(kind, mu) * lift(psi))

    def test_unit_spinor_e3(self):
        got = bivector_action("e", 3, ONE)
        assert close(got, -(G3 * I_G3))
        assert close(lift(got), bivector_generator("e", 3) * lift(ONE))

    def test_linear(self, rng):
        psi, phi = rand_even(rng), rand_even(rng)
        lhs = bivector_action("ebar", 1, 2.0 * psi + phi)
        assert close(lhs, 2.0 * bivector_action("ebar", 1, psi) + bivector_action("ebar", 1, phi))

    def test_null_directions_on_ideal(self):
        assert close(E * W12, to_cga(I_G3) * W12)
        assert close(EBAR * W12, -(to_cga(I4 * G0) * W12))

    def test_errors(self):
        with pytest.raises(ValueError):
            bivector_action("e", 4, ONE)
        with pytest.raises(ValueError):
            bivector_action("x", 0, ONE)
        with pytest.raises(ValueError):
            bivector_generator("x", 0)
        with pytest.raises(ValueError):
            bivector_generator("e", -1)
