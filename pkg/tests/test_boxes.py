import itertools
import math

import numpy as np
import pytest

from qubitlab.bell import BellKind, plane_direction
from qubitlab.boxes import (
    BehaviorBox,
    chsh_value,
    conservation_filter,
    deterministic_box,
    extremal_sign_family,
    lhv_max_chsh,
    no_signalling_check,
    pr_box,
    quantum_box,
    sign_pattern_box,
    tsirelson_scan,
)
from qubitlab.errors import DomainError, InvalidStateError

TSIRELSON = 2.0 * math.sqrt(2.0)


def canonical_singlet_box():
    angles_a = (0.0, math.pi / 2)
    angles_b = (math.pi / 4, 3 * math.pi / 4)
    return quantum_box(
        BellKind.SINGLET,
        [plane_direction("xz", a) for a in angles_a],
        [plane_direction("xz", b) for b in angles_b],
    )


def uniform_box():
    return BehaviorBox(np.full((2, 2, 2, 2), 0.25))


def signalling_box():
    # Alice's outcome tracks Bob's setting at x = 0
    p = np.zeros((2, 2, 2, 2))
    p[0, 0, 0, 0] = 1.0
    p[0, 1, 1, 1] = 1.0
    p[1, 0, 0, 0] = 1.0
    p[1, 1, 0, 0] = 1.0
    return BehaviorBox(p)


class TestBehaviorBox:
    def test_validation_shape(self):
        with pytest.raises(InvalidStateError):
            BehaviorBox(np.zeros((2, 2, 2)))

    def test_validation_normalization(self):
        p = np.full((2, 2, 2, 2), 0.25)
        p[0, 0, 0, 0] = 0.5
        with pytest.raises(InvalidStateError):
            BehaviorBox(p)

    def test_validation_negative(self):
        p = np.full((2, 2, 2, 2), 0.25)
        p[1, 1] = [[0.5, 0.75], [-0.25, 0.0]]
        with pytest.raises(InvalidStateError):
            BehaviorBox(p)

    def test_pr_box_entries(self):
        box = pr_box()
        assert box.p[0, 0, 0, 0] == 0.5  # equal outcomes at (a, b)
        assert box.p[1, 1, 0, 0] == 0.0  # only unequal outcomes at (a', b')
        assert box.p[1, 1, 0, 1] == 0.5

    def test_json_roundtrip_bit_exact(self):
        rng = np.random.default_rng(51)
        for _ in range(10):
            raw = rng.random((2, 2, 2, 2))
            raw /= raw.sum(axis=(2, 3), keepdims=True)
            box = BehaviorBox(raw)
            back = BehaviorBox.from_json(box.to_json())
            assert np.array_equal(back.p, box.p)

    def test_json_header_checked(self):
        with pytest.raises(InvalidStateError):
            BehaviorBox.from_json('{"settings": [3, 2], "outcomes": [1, -1], "p": []}')


class TestNoSignalling:
    def test_pr_box_no_signalling_with_uniform_marginals(self):
        box = pr_box()
        report = no_signalling_check(box)
        assert report.passed
        for x, y in itertools.product((0, 1), repeat=2):
            assert box.alice_marginal(x, y) == 0.5
            assert box.bob_marginal(x, y) == 0.5

    def test_quantum_boxes_no_signalling(self):
        rng = np.random.default_rng(52)
        for kind in BellKind:
            plane = kind.symmetry_plane if kind.symmetry_plane != "all" else "xy"
            angles = rng.uniform(0, math.pi, size=4)
            box = quantum_box(
                kind,
                [plane_direction(plane, a) for a in angles[:2]],
                [plane_direction(plane, b) for b in angles[2:]],
            )
            assert no_signalling_check(box).passed

    def test_signalling_box_detected(self):
        report = no_signalling_check(signalling_box())
        assert not report.passed
        assert any("Alice marginal" in v for v in report.violations)


class TestChsh:
    def test_pr_box_reaches_four(self):
        result = chsh_value(pr_box())
        assert result.value == 4.0
        np.testing.assert_array_equal(result.correlators, [[1.0, 1.0], [1.0, -1.0]])
        assert result.minus_on == (1, 1)

    def test_uncorrelated_box_is_zero(self):
        assert chsh_value(uniform_box()).value == 0.0

    def test_singlet_canonical_angles_reach_tsirelson(self):
        result = chsh_value(canonical_singlet_box())
        assert abs(result.value - TSIRELSON) <= 1e-9

    def test_lhv_bound_exact(self):
        scan = lhv_max_chsh()
        assert scan.max_value == 2.0
        assert scan.n_strategies == 16
        # every deterministic strategy pair reaches exactly 2
        assert scan.n_maximizers == 16

    def test_all_plus_strategy(self):
        box = deterministic_box((1, 1), (1, 1))
        assert chsh_value(box).value == 2.0

    def test_bad_strategy_rejected(self):
        with pytest.raises(DomainError):
            deterministic_box((1, 0), (1, 1))


class TestConservationFilter:
    def test_pr_box_inconsistent_with_deduction_chain(self):
        verdict = conservation_filter(pr_box())
        assert verdict.status == "inconsistent"
        text = " / ".join(verdict.trace)
        assert "a = b" in text
        assert "a = b'" in text
        assert "a' = b" in text
        assert "a' = -b'" in text          # the fourth correlator's demand
        assert "implies a' = b'" in text   # the chain's implication
        assert "antipode" in text

    def test_perfectly_correlated_consistent(self):
        verdict = conservation_filter(sign_pattern_box([[1, 1], [1, 1]]))
        assert verdict.status == "consistent"

    def test_mixed_sign_pattern_consistent(self):
        # graph closure by hand: a = b = b', and a' antipodal to both
        verdict = conservation_filter(sign_pattern_box([[1, 1], [-1, -1]]))
        assert verdict.status == "consistent"

    def test_non_extremal_not_applicable(self):
        assert conservation_filter(uniform_box()).status == "not_applicable"
        assert conservation_filter(canonical_singlet_box()).status == "not_applicable"

    def test_deterministic_boxes_consistent_and_bounded(self):
        for a in itertools.product((1, -1), repeat=2):
            for b in itertools.product((1, -1), repeat=2):
                box = deterministic_box(a, b)
                assert conservation_filter(box).status == "consistent"
                assert chsh_value(box).value <= 2.0


class TestExtremalFamily:
    def test_odd_parity_patterns_are_pr_like(self):
        # CHSH = 4 exactly when the product of the four correlator signs is -1;
        # all such patterns are PR-box relabelings and all fail conservation
        family = extremal_sign_family()
        assert len(family) == 16
        fours = []
        for signs, box in family:
            parity = signs[0] * signs[1] * signs[2] * signs[3]
            value = chsh_value(box).value
            verdict = conservation_filter(box).status
            assert no_signalling_check(box).passed
            if parity == -1:
                assert value == 4.0
                assert verdict == "inconsistent"
                fours.append(signs)
            else:
                assert value == 2.0
                assert verdict == "consistent"
        assert len(fours) == 8

    def test_chsh4_patterns_relabel_to_pr_box(self):
        # flipping Bob's outcomes at one setting multiplies that column by -1;
        # likewise for Alice and rows. Every CHSH-4 pattern reaches the PR box.
        pr_signs = np.array([[1, 1], [1, -1]])
        for signs, box in extremal_sign_family():
            if chsh_value(box).value != 4.0:
                continue
            s = np.array(signs).reshape(2, 2)
            reachable = False
            for fa0, fa1, fb0, fb1 in itertools.product((1, -1), repeat=4):
                flipped = s * np.array([[fa0 * fb0, fa0 * fb1], [fa1 * fb0, fa1 * fb1]])
                if np.array_equal(flipped, pr_signs):
                    reachable = True
                    break
            assert reachable


class TestTsirelsonScan:
    def test_small_scan_respects_bound(self):
        scan = tsirelson_scan(BellKind.SINGLET, "xz", n=36)
        assert scan.max_value <= TSIRELSON + 1e-9
        assert scan.max_value >= 2.0

    def test_scan_hits_tsirelson_on_degree_grid(self):
        scan = tsirelson_scan(BellKind.SINGLET, "xz", n=180)
        assert abs(scan.max_value - TSIRELSON) <= 1e-9

    def test_triplet_scan_in_its_plane(self):
        scan = tsirelson_scan(BellKind.PHI_PLUS, "xz", n=60)
        assert scan.max_value <= TSIRELSON + 1e-9

    def test_wrong_plane_rejected(self):
        with pytest.raises(DomainError):
            tsirelson_scan(BellKind.PSI_PLUS, "xz", n=12)

    def test_quantum_box_requires_two_directions(self):
        with pytest.raises(DomainError):
            quantum_box(BellKind.SINGLET, [plane_direction("xz", 0.0)], [plane_direction("xz", 0.0)])
