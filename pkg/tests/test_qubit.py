import math

import numpy as np
import pytest

from qubitlab.errors import DomainError, InvalidStateError
from qubitlab.hilbert import ATOL_EXACT, ID2, SIGMA_X, SIGMA_Z
from qubitlab.qubit import (
    ClassicalBitState,
    QubitState,
    bloch_roundtrip,
    bloch_rotation_for,
    classical_pure_path,
    gbit_dimension,
    so3_rotation,
    su2_rotate,
    su2_rotation,
)


def random_state(rng):
    # random point in the closed unit ball
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return QubitState.from_bloch(v * rng.uniform(0.0, 1.0))


class TestQubitState:
    def test_up_state_roundtrip(self):
        state = QubitState.up()
        np.testing.assert_allclose(state.bloch, [0, 0, 1], atol=ATOL_EXACT)
        assert state.is_pure
        np.testing.assert_allclose(bloch_roundtrip(state).rho, state.rho, atol=ATOL_EXACT)

    def test_maximally_mixed(self):
        state = QubitState.maximally_mixed()
        np.testing.assert_allclose(state.bloch, [0, 0, 0], atol=ATOL_EXACT)
        assert not state.is_pure
        np.testing.assert_allclose(state.rho, ID2 / 2, atol=ATOL_EXACT)

    def test_diagonal_bloch_vector_is_pure(self):
        # eigenvalue check: (I + (sx+sz)/sqrt2)/2 must be a rank-1 projector
        s = 1 / math.sqrt(2)
        state = QubitState.from_bloch([s, 0.0, s])
        expected = (ID2 + (SIGMA_X + SIGMA_Z) * s) / 2
        np.testing.assert_allclose(state.rho, expected, atol=ATOL_EXACT)
        np.testing.assert_allclose(np.linalg.eigvalsh(state.rho), [0.0, 1.0], atol=ATOL_EXACT)
        assert state.is_pure

    def test_roundtrip_on_random_states(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            state = random_state(rng)
            np.testing.assert_allclose(bloch_roundtrip(state).rho, state.rho, atol=ATOL_EXACT)

    def test_bad_trace_rejected(self):
        with pytest.raises(InvalidStateError):
            QubitState(np.eye(2, dtype=complex))

    def test_negative_eigenvalue_rejected(self):
        with pytest.raises(InvalidStateError):
            QubitState(np.diag([1.5, -0.5]).astype(complex))

    def test_bloch_vector_outside_ball_rejected(self):
        with pytest.raises(InvalidStateError):
            QubitState.from_bloch([1.0, 0.0, 0.1])


class TestSu2Rotation:
    def test_quarter_turn_moves_pole_to_equator(self):
        rotated = su2_rotate(QubitState.up(), "x", math.pi / 4)
        assert abs(rotated.bloch[2]) <= ATOL_EXACT
        # our convention: exp(i*theta*sigma_x) turns z toward +y for theta = pi/4
        np.testing.assert_allclose(rotated.bloch, [0, 1, 0], atol=ATOL_EXACT)

    def test_zero_angle_is_identity(self):
        rng = np.random.default_rng(22)
        state = random_state(rng)
        np.testing.assert_allclose(su2_rotate(state, "y", 0.0).rho, state.rho, atol=ATOL_EXACT)

    def test_pole_fixed_under_z_rotation(self):
        for theta in (0.3, 1.0, -2.5):
            rotated = su2_rotate(QubitState.up(), "z", theta)
            np.testing.assert_allclose(rotated.bloch, [0, 0, 1], atol=ATOL_EXACT)

    def test_purity_preserved(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            state = random_state(rng)
            axis = rng.normal(size=3)
            theta = rng.uniform(-math.pi, math.pi)
            rotated = su2_rotate(state, axis, theta)
            assert abs(np.linalg.norm(rotated.bloch) - np.linalg.norm(state.bloch)) <= 1e-12

    def test_conjugation_matches_so3_action(self):
        rng = np.random.default_rng(24)
        for _ in range(50):
            state = random_state(rng)
            axis = rng.normal(size=3)
            theta = rng.uniform(-math.pi, math.pi)
            rotated = su2_rotate(state, axis, theta)
            np.testing.assert_allclose(
                rotated.bloch, bloch_rotation_for(axis, theta) @ state.bloch, atol=1e-12
            )

    def test_composition_homomorphism(self):
        rng = np.random.default_rng(25)
        for _ in range(30):
            state = random_state(rng)
            ax1, ax2 = rng.normal(size=3), rng.normal(size=3)
            t1, t2 = rng.uniform(-2, 2, size=2)
            two_step = su2_rotate(su2_rotate(state, ax1, t1), ax2, t2)
            composed = bloch_rotation_for(ax2, t2) @ bloch_rotation_for(ax1, t1) @ state.bloch
            np.testing.assert_allclose(two_step.bloch, composed, atol=1e-9)

    def test_unitary_unitarity(self):
        u = su2_rotation([1.0, 1.0, 0.0], 0.7)
        np.testing.assert_allclose(u @ u.conj().T, ID2, atol=ATOL_EXACT)

    def test_so3_is_rotation_matrix(self):
        r = so3_rotation([0.0, 1.0, 1.0], 1.1)
        np.testing.assert_allclose(r @ r.T, np.eye(3), atol=ATOL_EXACT)
        assert abs(np.linalg.det(r) - 1.0) <= ATOL_EXACT

    def test_nonfinite_angle_rejected(self):
        with pytest.raises(DomainError):
            su2_rotation("x", math.inf)


class TestGbitDimension:
    @pytest.mark.parametrize("s,expected", [(1, 1), (2, 3), (4, 15)])
    def test_values(self, s, expected):
        assert gbit_dimension(s) == expected

    @pytest.mark.parametrize("bad", [0, -1, 1.5, True])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(DomainError):
            gbit_dimension(bad)


class TestClassicalBit:
    def test_path_zero_to_one_interior_mixed(self):
        path = classical_pure_path(ClassicalBitState(0.0), ClassicalBitState(1.0), steps=3)
        assert [s.p1 for s in path] == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert all(not s.is_pure for s in path[1:-1])

    def test_path_one_to_zero_single_step(self):
        path = classical_pure_path(ClassicalBitState(1.0), ClassicalBitState(0.0), steps=1)
        assert [s.p1 for s in path] == [1.0, 0.5, 0.0]
        assert not path[1].is_pure

    def test_qubit_contrast_pole_to_pole_stays_pure(self):
        # ten equal rotation steps from (0,0,1) to (0,0,-1) about x: every
        # state along the way sits on the sphere surface
        states = [QubitState.up()]
        for k in range(1, 11):
            states.append(su2_rotate(QubitState.up(), "x", k * (math.pi / 2) / 10))
        np.testing.assert_allclose(states[-1].bloch, [0, 0, -1], atol=ATOL_EXACT)
        assert all(s.is_pure for s in states)
        assert len(states) == 11

    def test_any_two_pure_states_connected_through_pure_states(self):
        rng = np.random.default_rng(26)
        for _ in range(10):
            a = rng.normal(size=3)
            a /= np.linalg.norm(a)
            b = rng.normal(size=3)
            b /= np.linalg.norm(b)
            axis = np.cross(a, b)
            angle = math.acos(float(np.clip(a @ b, -1, 1)))
            start = QubitState.from_bloch(a)
            path = [su2_rotate(start, axis, -0.5 * angle * t) for t in np.linspace(0, 1, 12)]
            assert all(s.is_pure for s in path)
            np.testing.assert_allclose(path[-1].bloch, b, atol=1e-9)

    def test_non_pure_endpoint_rejected(self):
        with pytest.raises(DomainError):
            classical_pure_path(ClassicalBitState(0.4), ClassicalBitState(1.0), steps=2)

    def test_equal_endpoints_rejected(self):
        with pytest.raises(DomainError):
            classical_pure_path(ClassicalBitState(1.0), ClassicalBitState(1.0), steps=2)

    def test_invalid_probability_rejected(self):
        with pytest.raises(InvalidStateError):
            ClassicalBitState(1.2)
