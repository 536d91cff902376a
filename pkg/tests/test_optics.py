import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from fieldwalk.coinwalk import coin_from_t1, init_coin, walk_distribution
from fieldwalk.optics import (
    SYMMETRIC_T1,
    BeamSplitterParams,
    Direction,
    LineState,
    StepNoise,
    apply_t1,
    apply_t2,
    beam_splitter_matrix,
    photon_distribution,
    propagate,
    scale_to_input,
    t2_matrix,
    t2_matrix_composed,
)

from oracles import hadamard_node, mode_photon_numbers, mode_propagate

D, S = Direction.DOWN, Direction.SIDE
R2 = 1 / math.sqrt(2)

# M(N, k) for the symmetric walk, exact rationals from oracles.exact_photon_numbers
EXACT_M = {
    4: {-4: 1 / 16, -2: 3 / 8, 0: 1 / 8, 2: 3 / 8, 4: 1 / 16},
    5: {-5: 1 / 32, -3: 11 / 32, -1: 1 / 8, 1: 1 / 8, 3: 11 / 32, 5: 1 / 32},
    6: {-6: 1 / 64, -4: 9 / 32, -2: 9 / 64, 0: 1 / 8, 2: 9 / 64, 4: 9 / 32, 6: 1 / 64},
}

angles = st.tuples(
    st.floats(0.0, math.pi),
    st.floats(-math.pi, math.pi).filter(lambda p: p > -math.pi),
)


class TestBeamSplitterParams:
    @pytest.mark.parametrize("theta, phi", [(-0.1, 0.0), (3.2, 0.0), (1.0, -math.pi), (1.0, 3.2)])
    def test_out_of_range(self, theta, phi):
        with pytest.raises(ValueError):
            BeamSplitterParams(theta, phi)

    def test_bounds_inclusive(self):
        BeamSplitterParams(0.0, math.pi)
        BeamSplitterParams(math.pi, 0.0)


class TestApplyT1:
    def test_symmetric(self):
        s = apply_t1(BeamSplitterParams(math.pi / 2, -math.pi / 2))
        assert s.j == 1
        assert s.amplitude(1, D) == pytest.approx(R2, abs=1e-15)
        assert s.amplitude(-1, S) == pytest.approx(-1j * R2, abs=1e-15)
        assert s.norm_squared() == pytest.approx(1.0, abs=1e-15)

    def test_fully_transmitting(self):
        s = apply_t1(BeamSplitterParams(0.0, 2.0))
        assert s.amplitude(1, D) == 1
        assert s.amplitude(-1, S) == 0

    def test_fully_reflecting(self):
        s = apply_t1(BeamSplitterParams(math.pi, 0.0))
        assert s.amplitude(-1, S) == pytest.approx(1.0, abs=1e-15)
        assert abs(s.amplitude(1, D)) < 1e-15

    def test_tuple_params_validated(self):
        with pytest.raises(ValueError):
            apply_t1((4.0, 0.0))


class TestLineState:
    def test_edge_modes_rejected(self):
        with pytest.raises(ValueError):
            LineState.from_modes(2, {(-2, "down"): 1.0})
        with pytest.raises(ValueError):
            LineState.from_modes(2, {(2, "side"): 1.0})

    @pytest.mark.parametrize("k", [1, 3, -4])
    def test_parity_and_range(self, k):
        with pytest.raises(ValueError):
            LineState.from_modes(2, {(k, "down"): 1.0})

    def test_modes_listing_skips_edge_vacuum(self):
        keys = list(apply_t1().modes())
        assert keys == [(-1, S), (1, D)]

    def test_absent_mode_is_zero(self):
        s = apply_t1()
        assert s.amplitude(0, D) == 0
        assert s.amplitude(7, S) == 0


class TestApplyT2:
    def test_second_line_quarter_weights(self):
        s = apply_t2(apply_t1(SYMMETRIC_T1))
        for key in [(2, D), (0, S), (0, D), (-2, S)]:
            assert abs(s.amplitude(*key)) ** 2 == pytest.approx(0.25, abs=1e-12)
        assert s.j == 2

    def test_single_mode_split(self):
        s = apply_t2(LineState.from_modes(2, {(0, "down"): 1.0}))
        assert s.j == 3
        assert s.amplitude(1, D) == pytest.approx(R2, abs=1e-15)
        assert s.amplitude(-1, S) == pytest.approx(R2, abs=1e-15)

    def test_exact_update_rule(self):
        rng = np.random.default_rng(3)
        j = 5
        amps = {}
        for k in range(-j, j + 1, 2):
            if k != -j:
                amps[(k, "down")] = complex(*rng.normal(size=2))
            if k != j:
                amps[(k, "side")] = complex(*rng.normal(size=2))
        s = LineState.from_modes(j, amps)
        out = apply_t2(s)
        for k in range(-j, j + 1, 2):
            d, sd = s.amplitude(k, D), s.amplitude(k, S)
            assert out.amplitude(k + 1, D) == pytest.approx((d + sd) * R2, abs=1e-14)
            assert out.amplitude(k - 1, S) == pytest.approx((d - sd) * R2, abs=1e-14)

    def test_four_steps_match_mode_magnitudes(self):
        s = propagate(4)
        # node order of the N=4 coherent-state output: (-4,s) (-2,d) (-2,s) (0,d) (0,s) (2,d) (2,s) (4,d)
        order = [(-4, S), (-2, D), (-2, S), (0, D), (0, S), (2, D), (2, S), (4, D)]
        mags = [abs(s.amplitude(k, d)) for k, d in order]
        expected = [1, 1, math.sqrt(5), 1, 1, math.sqrt(5), 1, 1]
        np.testing.assert_allclose(mags, np.array(expected) / 4, atol=1e-12, rtol=0)

    def test_theta_map_and_array_agree(self):
        s = propagate(3)
        thetas = {-3: 0.3, -1: 1.1, 1: 2.0, 3: 2.9}
        a = apply_t2(s, thetas)
        b = apply_t2(s, np.array([0.3, 1.1, 2.0, 2.9]))
        np.testing.assert_array_equal(a.down, b.down)
        np.testing.assert_array_equal(a.side, b.side)

    def test_general_theta_against_mode_oracle(self):
        thetas = np.linspace(0.2, 2.8, 4)
        s = apply_t2(propagate(3, BeamSplitterParams(1.0, 0.4)), thetas)
        modes = mode_propagate(
            4, 1.0, 0.4,
            node_matrix=lambda j, k: hadamard_node(thetas[(k + 3) // 2]) if j == 3 else hadamard_node(),
        )
        for (k, dr), a in modes.items():
            got = s.amplitude(k, D if dr == "d" else S)
            assert got == pytest.approx(a, abs=1e-14)

    def test_phase_offsets_layers(self):
        s = propagate(2)
        offsets = {(0, "down", "before"): 0.7, (-2, "side", "before"): -1.2, (1, "side", "after"): 2.5}
        out = apply_t2(s, phase_offsets=offsets)
        phases = lambda j, k, dr, layer: offsets.get((k, {"d": "down", "s": "side"}[dr], layer), 0.0)
        modes = mode_propagate(3, math.pi / 2, -math.pi / 2, phases=lambda j, k, dr, layer:
                               phases(j, k, dr, layer) if j == 2 else 0.0)
        for (k, dr), a in modes.items():
            assert out.amplitude(k, D if dr == "d" else S) == pytest.approx(a, abs=1e-14)

    def test_bad_phase_layer(self):
        with pytest.raises(ValueError):
            apply_t2(propagate(2), phase_offsets={(0, "down", "middle"): 1.0})

    def test_phase_offset_on_missing_node(self):
        with pytest.raises(ValueError):
            apply_t2(propagate(2), phase_offsets={(1, "down", "before"): 1.0})


class TestNodeMatrices:
    def test_t2_is_hadamard(self):
        np.testing.assert_allclose(t2_matrix(), np.array([[1, 1], [1, -1]]) * R2, atol=1e-15)

    @given(st.floats(0, math.pi))
    def test_t2_unitary(self, theta):
        u = t2_matrix(theta)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-14)

    @given(angles)
    def test_splitter_matches_operator_exponential(self, tp):
        theta, phi = tp
        # one-photon generator in basis (down, side): a_s^+ a_d maps down->side
        g = (theta / 2) * np.array([[0, -np.exp(-1j * phi)], [np.exp(1j * phi), 0]])
        np.testing.assert_allclose(beam_splitter_matrix(theta, phi), expm(g), atol=1e-13)

    @given(st.floats(0, math.pi))
    def test_composed_t2_is_gauge_equivalent(self, theta):
        c = t2_matrix_composed(theta)
        h = t2_matrix(theta)
        np.testing.assert_allclose(np.abs(c), np.abs(h), atol=1e-14)
        # c = diag(a) h diag(b) with a_d b_d == a_s b_s, so chains differ by a global phase
        a = np.array([-1j, -1.0])
        b = np.array([1.0, 1j])
        np.testing.assert_allclose(c, np.diag(a) @ h @ np.diag(b), atol=1e-14)
        assert a[0] * b[0] == pytest.approx(a[1] * b[1])

    @pytest.mark.parametrize("phi", [-math.pi / 2, 0.0, 1.0])
    def test_composed_chain_same_photon_numbers(self, phi):
        # the input gauge (1, i) also lands on the T1 output: a pi/2 shift of phi
        m = t2_matrix_composed(1.2).tolist()
        modes = mode_propagate(12, 0.9, phi, node_matrix=lambda j, k: m)
        ref = photon_distribution(
            propagate(12, BeamSplitterParams(0.9, phi + math.pi / 2),
                      noise=[StepNoise(theta=1.2)] * 11)
        )
        for k, v in mode_photon_numbers(modes).items():
            assert v == pytest.approx(ref[k], abs=1e-13)


class TestPropagate:
    def test_one_step_is_t1(self):
        a, b = propagate(1), apply_t1()
        np.testing.assert_array_equal(a.down, b.down)
        np.testing.assert_array_equal(a.side, b.side)

    @pytest.mark.parametrize("n", [0, -1, 2.5])
    def test_bad_steps(self, n):
        with pytest.raises(ValueError):
            propagate(n)

    def test_unitarity_200(self):
        assert propagate(200).norm_squared() == pytest.approx(1.0, abs=1e-9)

    def test_noise_too_short(self):
        with pytest.raises(ValueError):
            propagate(5, noise=[StepNoise()] * 3)

    def test_noise_identity_layers(self):
        a = propagate(9, noise=[StepNoise()] * 8)
        b = propagate(9)
        np.testing.assert_array_equal(a.down, b.down)


class TestPhotonDistribution:
    @pytest.mark.parametrize("n", sorted(EXACT_M))
    def test_exact_small_n(self, n):
        dist = photon_distribution(propagate(n))
        for k, v in EXACT_M[n].items():
            assert dist[k] == pytest.approx(v, abs=1e-12)
        assert dist.total() == pytest.approx(1.0, abs=1e-12)

    def test_first_split(self):
        assert photon_distribution(apply_t1()).as_dict() == pytest.approx({-1: 0.5, 1: 0.5}, abs=1e-15)

    def test_matches_coined_walk_at_six(self):
        dist = photon_distribution(propagate(6))
        ref = walk_distribution(6, init_coin(*coin_from_t1(SYMMETRIC_T1)))
        np.testing.assert_allclose(dist.values, ref.values, atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(angles, st.integers(1, 120))
    def test_unitarity_and_parity(self, tp, n):
        dist = photon_distribution(propagate(n, BeamSplitterParams(*tp)))
        assert dist.total() == pytest.approx(1.0, abs=1e-9)
        odd = dist.values[1::2]
        assert np.all(odd == 0)
        assert np.all(dist.values >= 0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(1, 200))
    def test_symmetric_walk_is_symmetric(self, n):
        v = photon_distribution(propagate(n)).values
        np.testing.assert_allclose(v, v[::-1], atol=1e-10)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 40), st.integers(0, 2**32 - 1))
    def test_last_line_phases_do_not_change_m(self, n, seed):
        rng = np.random.default_rng(seed)
        s = propagate(n)
        shifted = LineState(n, s.down * np.exp(1j * rng.uniform(0, 7, n + 1)) * (s.down != 0),
                            s.side * np.exp(1j * rng.uniform(0, 7, n + 1)))
        np.testing.assert_allclose(photon_distribution(shifted).values,
                                   photon_distribution(s).values, atol=1e-15)


class TestScaleToInput:
    def test_unit_input(self):
        dist = photon_distribution(propagate(4))
        assert scale_to_input(dist, 1.0) == dist.as_dict()

    def test_zero_input(self):
        assert all(v == 0 for v in scale_to_input(photon_distribution(propagate(5)), 0.0).values())

    def test_linear(self):
        assert scale_to_input(photon_distribution(propagate(4)), 4.0)[0] == pytest.approx(0.5, abs=1e-12)

    def test_negative(self):
        with pytest.raises(ValueError):
            scale_to_input(photon_distribution(propagate(4)), -1.0)
