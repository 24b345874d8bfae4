import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistor_ga.conformal import CGA
from twistor_ga.ga_core import (
    Multivector,
    NotABlade,
    Signature,
    SignatureMismatch,
    exp_series,
    grade_projection,
    inner_product,
    is_rotor,
    outer_product,
    pseudoscalar,
    random_multivector,
    reverse,
    rotor_exp,
    sandwich,
    scalar_product,
)
from twistor_ga.matrix_oracle import matrix_oracle
from twistor_ga.sta import G0, G1, G2, G3, GAMMA, I4, IS3, SIGMA1, SIGMA2, SIGMA3, STA

from conftest import TOL, close, coord

vec4 = st.lists(coord, min_size=4, max_size=4)


class TestSignature:
    def test_dimension_limits(self):
        with pytest.raises(ValueError):
            Signature(0, 0)
        with pytest.raises(ValueError):
            Signature(4, 3)
        with pytest.raises(ValueError):
            Signature(-1, 2)

    def test_default_metric_puts_positives_first(self):
        assert Signature(2, 1).squares == (1, 1, -1)

    def test_explicit_metric_must_match_counts(self):
        with pytest.raises(ValueError):
            Signature(1, 1, metric=(1, 1))

    def test_mismatch_rejected(self):
        a = Multivector.scalar(STA, 1.0)
        b = Multivector.scalar(Signature(3, 0), 1.0)
        with pytest.raises(SignatureMismatch):
            a * b

    def test_cga_basis_order(self):
        assert CGA.squares == (1, -1, -1, -1, 1, -1)


class TestProducts:
    def test_dirac_relations(self):
        eta = np.diag([1, -1, -1, -1])
        for m in range(4):
            for n in range(4):
                assert GAMMA[m] * GAMMA[n] + GAMMA[n] * GAMMA[m] == Multivector.scalar(STA, 2.0 * eta[m, n])

    def test_identity_element(self, rng):
        a = random_multivector(CGA, rng)
        assert close(a * 1.0, a) and close(1.0 * a, a)

    def test_anticommuting_basis(self):
        for sig in (STA, CGA):
            e = [Multivector.blade(sig, 1 << k) for k in range(sig.dim)]
            for i in range(sig.dim):
                assert e[i] * e[i] == Multivector.scalar(sig, float(sig.squares[i]))
                for j in range(i + 1, sig.dim):
                    assert e[i] * e[j] == -(e[j] * e[i])

    @settings(max_examples=60, deadline=None)
    @given(vec4, vec4)
    def test_vector_product_split(self, a, b):
        a, b = Multivector.vector(STA, a), Multivector.vector(STA, b)
        assert close(a * b, (a | b) + (a ^ b))
        assert close(a | b, 0.5 * (a * b + b * a))
        assert close(a ^ b, 0.5 * (a * b - b * a))
        assert close(a ^ a, 0.0)

    def test_pauli_algebra(self):
        s = (SIGMA1, SIGMA2, SIGMA3)
        for i in range(3):
            assert s[i] * s[i] == Multivector.scalar(STA, 1.0)
        assert SIGMA1 * SIGMA2 == I4 * SIGMA3
        assert SIGMA2 * SIGMA3 == I4 * SIGMA1
        assert SIGMA3 * SIGMA1 == I4 * SIGMA2

    def test_is3_is_g2g1(self):
        assert IS3 == G2 * G1

    def test_outer_inner_grades(self, rng):
        a = random_multivector(STA, rng, grades=(1,))
        b = random_multivector(STA, rng, grades=(2,))
        assert (a ^ b).is_grade(3)
        assert (a | b).is_grade(1)
        assert outer_product(a, b) == (a ^ b)
        assert inner_product(a, b) == (a | b)

    def test_scalar_inner_is_identity(self, rng):
        b = random_multivector(STA, rng)
        assert close(Multivector.scalar(STA, 1.0) | b, b)


class TestGradeAndReverse:
    def test_projection_examples(self):
        b = G0 * G1
        assert grade_projection(b, 2) == b
        assert grade_projection(b, 0) == Multivector.zero(STA)

    def test_projection_out_of_range(self):
        with pytest.raises(ValueError):
            grade_projection(G0, 5)
        with pytest.raises(ValueError):
            grade_projection(G0, -1)

    def test_completeness(self, rng):
        a = random_multivector(CGA, rng)
        total = sum((a.grade(k) for k in range(7)), Multivector.zero(CGA))
        assert close(total, a)

    def test_reverse_examples(self):
        assert reverse(G0 * G1) == G1 * G0
        assert reverse(Multivector.scalar(STA, 3.5)) == Multivector.scalar(STA, 3.5)

    def test_reverse_laws(self, rng):
        for sig in (STA, CGA):
            a, b = random_multivector(sig, rng), random_multivector(sig, rng)
            assert close(~(a * b), ~b * ~a)
            assert ~~a == a
            assert abs((a * b).scalar_part - (b * a).scalar_part) <= TOL

    def test_scalar_part_matches_trace(self, rng):
        oracle = matrix_oracle(CGA)
        a, b = random_multivector(CGA, rng), random_multivector(CGA, rng)
        m = oracle.to_matrix(a) @ oracle.to_matrix(b)
        assert abs(oracle.scalar_part(m) - (a * b).scalar_part) <= 1e-9


class TestPseudoscalar:
    def test_sta(self):
        assert I4 * I4 == Multivector.scalar(STA, -1.0)

    def test_cga_frozen(self):
        # frozen regression value
        i6 = pseudoscalar(CGA)
        assert i6 * i6 == Multivector.scalar(CGA, -1.0)


class TestRotors:
    def test_zero_bivector(self):
        assert rotor_exp(Multivector.zero(STA), 1.0) == Multivector.scalar(STA, 1.0)

    def test_rejects_non_bivector(self):
        with pytest.raises(ValueError):
            rotor_exp(G0, 1.0)

    def test_rejects_non_blade(self):
        with pytest.raises(NotABlade):
            rotor_exp(G0 * G1 + G2 * G3, 1.0)

    def test_rotation_in_is3_plane(self):
        theta = 0.7
        r = rotor_exp(IS3, theta)
        assert close(r, exp_series(-0.5 * theta * IS3, terms=12), 1e-9)
        out = sandwich(r, SIGMA1)
        # sigma1 turns toward sigma2 by theta
        assert close(out, math.cos(theta) * SIGMA1 + math.sin(theta) * SIGMA2)

    def test_rotation_by_pi(self):
        r = rotor_exp(IS3, math.pi)
        assert close(sandwich(r, G1), -G1)
        assert close(r, exp_series(-0.5 * math.pi * IS3))

    def test_twelve_terms_fall_short_at_pi(self):
        # 12 series terms leave a ~5e-7 gap at theta = pi, hence the 40-term default
        r = rotor_exp(IS3, math.pi)
        gap = (r - exp_series(-0.5 * math.pi * IS3, terms=12)).max_abs()
        assert 1e-8 < gap < 1e-6

    def test_boost(self):
        alpha = 0.4
        r = rotor_exp(SIGMA3, -alpha)
        assert close(sandwich(r, G0), math.cosh(alpha) * G0 + math.sinh(alpha) * G3)
        assert close(r, exp_series(0.5 * alpha * SIGMA3))

    def test_null_blade(self):
        b = (G0 + G1) ^ G2
        r = rotor_exp(b, 1.3)
        assert close(r, 1.0 - 0.65 * b)
        assert close(r, exp_series(-0.65 * b))

    def test_two_pi_flips_sign(self):
        assert close(rotor_exp(IS3, 2 * math.pi), -1.0)

    @settings(max_examples=60, deadline=None)
    @given(vec4, vec4, st.floats(-3.0, 3.0), vec4)
    def test_rotor_properties(self, a, b, lam, x):
        blade = (Multivector.vector(STA, a) ^ Multivector.vector(STA, b)).grade(2)
        r = rotor_exp(blade, lam)
        assert is_rotor(r, 1e-9)
        assert close(r, exp_series(-0.5 * lam * blade), 1e-9)
        assert sandwich(r, Multivector.vector(STA, x)).is_grade(1, 1e-9)

    def test_sandwich_identity(self, rng):
        a = random_multivector(STA, rng)
        assert close(sandwich(Multivector.scalar(STA, 1.0), a), a)


class TestMultivector:
    def test_immutable(self, rng):
        a = random_multivector(STA, rng)
        with pytest.raises(AttributeError):
            a.coeffs = None
        with pytest.raises(ValueError):
            a.coeffs[0] = 1.0

    def test_rejects_bad_length_and_nan(self):
        with pytest.raises(ValueError):
            Multivector(STA, [1.0, 2.0])
        with pytest.raises(ValueError):
            Multivector(STA, [np.nan] + [0.0] * 15)

    def test_numpy_scalar_on_left(self):
        assert np.float64(2.0) * G0 == 2.0 * G0

    def test_embed_and_restrict(self, rng):
        a = random_multivector(STA, rng)
        assert a.embed(CGA).restrict(STA) == a
        assert (a.embed(CGA) * G0.embed(CGA)).restrict(STA) == a * G0

    def test_repr_uses_names(self):
        assert "g0" in repr(G0)


class TestMatrixOracle:
    @pytest.mark.parametrize("sig", [STA, CGA, Signature(3, 0), Signature(2, 1), Signature(0, 5)])
    def test_faithful(self, sig):
        assert matrix_oracle(sig).rank() == sig.size

    def test_generators_satisfy_metric(self):
        oracle = matrix_oracle(STA)
        eta = np.diag([1, -1, -1, -1])
        g = oracle.generators
        for m in range(4):
            for n in range(4):
                assert np.allclose(g[m] @ g[n] + g[n] @ g[m], 2 * eta[m, n] * np.eye(oracle.size))

    def test_identity_blade(self):
        oracle = matrix_oracle(STA)
        assert np.allclose(oracle.blades[0], np.eye(oracle.size))

    def test_products_and_roundtrip(self, rng):
        for sig in (STA, CGA):
            oracle = matrix_oracle(sig)
            for _ in range(50):
                a, b = random_multivector(sig, rng), random_multivector(sig, rng)
                assert oracle.product_residual(a, b) <= 1e-9
            assert close(oracle.from_matrix(oracle.to_matrix(a)), a, 1e-9)

    def test_scalar_product_symmetric(self, rng):
        a, b = random_multivector(CGA, rng), random_multivector(CGA, rng)
        assert abs(scalar_product(a, b) - scalar_product(b, a)) <= TOL

    def test_pickle_roundtrip(self, rng):
        import pickle
        a = random_multivector(CGA, rng)
        b = pickle.loads(pickle.dumps(a))
        assert b == a and b.sig == a.sig
        assert not b.coeffs.flags.writeable
