import math

import numpy as np

from qubitlab.hilbert import ATOL_EXACT, commutator
from qubitlab.spinops import (
    LX_TARGET,
    LY_TARGET,
    LZ,
    SpinOperatorTriple,
    construct_lx_from_lz,
    construct_ly_from_lz,
    verify_pauli_embedding,
)

S2 = 1.0 / math.sqrt(2.0)


class TestConstruction:
    def test_lx_matches_target(self):
        np.testing.assert_allclose(construct_lx_from_lz(), LX_TARGET, atol=ATOL_EXACT)

    def test_ly_matches_target(self):
        np.testing.assert_allclose(construct_ly_from_lz(), LY_TARGET, atol=ATOL_EXACT)

    def test_single_entries(self):
        assert abs(construct_lx_from_lz()[0, 1] - S2) <= ATOL_EXACT
        assert abs(construct_ly_from_lz()[1, 0] - 1j * S2) <= ATOL_EXACT

    def test_lx_spectrum(self):
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvalsh(construct_lx_from_lz())), [-1, 0, 1], atol=ATOL_EXACT
        )

    def test_hermitian_traceless(self):
        for op in (construct_lx_from_lz(), construct_ly_from_lz()):
            np.testing.assert_allclose(op, op.conj().T, atol=ATOL_EXACT)
            assert abs(np.trace(op)) <= ATOL_EXACT

    def test_ly_off_diagonals_purely_imaginary(self):
        ly = construct_ly_from_lz()
        for i, j in ((0, 1), (1, 2)):
            assert abs(ly[i, j].real) <= ATOL_EXACT
            assert abs(ly[i, j] + ly[j, i]) <= ATOL_EXACT

    def test_cyclic_commutators(self):
        lx, ly = construct_lx_from_lz(), construct_ly_from_lz()
        np.testing.assert_allclose(commutator(lx, ly), 1j * LZ, atol=ATOL_EXACT)
        np.testing.assert_allclose(commutator(ly, LZ), 1j * lx, atol=ATOL_EXACT)
        np.testing.assert_allclose(commutator(LZ, lx), 1j * ly, atol=ATOL_EXACT)

    def test_spectra_match_lz(self):
        # unitary equivalence: identical spectra for all three operators
        for op in (construct_lx_from_lz(), construct_ly_from_lz(), LZ):
            np.testing.assert_allclose(
                np.sort(np.linalg.eigvalsh(op)), np.sort(np.linalg.eigvalsh(LZ)), atol=ATOL_EXACT
            )


class TestVerification:
    def test_canonical_triple_passes(self):
        report = verify_pauli_embedding(SpinOperatorTriple.canonical())
        assert report.passed
        assert report.failures == ()

    def test_swapped_triple_fails_commutators(self):
        triple = SpinOperatorTriple(construct_ly_from_lz(), construct_lx_from_lz(), LZ)
        report = verify_pauli_embedding(triple)
        assert not report.passed
        failed = {c.name for c in report.failures}
        # swapping lx and ly flips the sign: [ly, lx] = -i lz
        assert "[lx,ly] = i lz" in failed
        comm = next(c for c in report.checks if c.name == "[lx,ly] = i lz")
        assert comm.deviation == 2.0

    def test_scaled_triple_fails_spectrum(self):
        triple = SpinOperatorTriple(
            2 * construct_lx_from_lz(), 2 * construct_ly_from_lz(), 2 * LZ
        )
        report = verify_pauli_embedding(triple)
        assert not report.passed
        assert any("spectrum" in c.name for c in report.failures)
