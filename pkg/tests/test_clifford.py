import numpy as np
import pytest

from diracosc.clifford import (SIGMA, clifford_rep, dirac_representation, minimal_representation,
                               spin_matrices, verify_clifford)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dirac_generators_anticommute_exactly(d):
    rep = dirac_representation(d)
    assert rep.rep_dim == 4
    assert len(rep.generators) == d + 1
    report = verify_clifford(rep)
    assert report.passed
    assert report.max_residual == 0.0


def test_dirac_block_form():
    rep = dirac_representation(3)
    assert np.array_equal(rep.beta, np.diag([1, 1, -1, -1]).astype(complex))
    for a, s in zip(rep.alphas, SIGMA):
        assert np.array_equal(a[:2, 2:], s) and np.array_equal(a[2:, :2], s)
        assert not a[:2, :2].any()


@pytest.mark.parametrize("d", [1, 2])
def test_minimal_representation(d):
    rep = minimal_representation(d)
    assert rep.rep_dim == 2
    assert verify_clifford(rep).passed


def test_bad_dimensions():
    with pytest.raises(ValueError):
        dirac_representation(4)
    with pytest.raises(ValueError):
        minimal_representation(3)
    with pytest.raises(ValueError):
        clifford_rep(2, "majorana")


def test_spin_matrices_form_su2():
    S = spin_matrices(dirac_representation(3))
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        assert np.allclose(S[j] @ S[k] - S[k] @ S[j], 1j * S[i])
    total = sum(s @ s for s in S)
    assert np.allclose(total, 0.75 * np.eye(4))


def test_two_dimensional_spin_is_diagonal():
    (S0,) = spin_matrices(dirac_representation(2))
    assert np.allclose(S0, np.diag(np.diag(S0)))
    assert np.allclose(np.diag(S0), [0.5, -0.5, 0.5, -0.5])
