import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracosc.fock import interior_mask
from diracosc.oscillator import OscillatorModel, build_registry


def interior(reg, depth=2):
    M = reg.model
    mask = interior_mask(depth, M.dim, M.cutoff, M.spinor_dim)
    return lambda op: op.toarray()[mask][:, mask]


@pytest.mark.parametrize("dim,n", [(1, 10), (2, 5), (3, 3)])
def test_hamiltonian_is_hermitian(dim, n):
    reg = build_registry(OscillatorModel(dim, 1.2, 0.8, n))
    H = reg["H"].matrix
    assert abs(H - H.conj().T).max() < 1e-14
    assert reg.model.size == 4 * (n + 1) ** dim


@pytest.mark.parametrize("dim,n", [(1, 10), (2, 5), (3, 3)])
def test_ladder_pairs_are_adjoint(dim, n):
    reg = build_registry(OscillatorModel(dim, 1.0, 1.0, n))
    pairs = [(lab, lab[:-1] + "+") for lab in reg.labels() if re.fullmatch(r"[bsac]\d?-", lab)]
    if dim == 3:
        pairs += [("B-s", "B+s"), ("S-s", "S+s"), ("J-", "J+")]
    assert pairs
    for lo, hi in pairs:
        assert abs(reg[lo].matrix.conj().T - reg[hi].matrix).max() < 1e-13, lo


def test_vacuum_energy_is_mass(reg1):
    H = reg1["H"].matrix
    beta = reg1["beta"].matrix.diagonal()
    occ = reg1.model.total_occupation()
    for i in np.flatnonzero((occ == 0) & (np.real(beta) > 0)):
        v = np.zeros(reg1.model.size)
        v[i] = 1.0
        assert np.vdot(v, H @ v).real == pytest.approx(reg1.model.mass, abs=1e-14)


def test_fermionic_ladders_square_to_zero(reg1):
    assert abs(reg1["s-"].matrix @ reg1["s-"].matrix).max() == 0
    assert abs(reg1["s+"].matrix @ reg1["s+"].matrix).max() == 0


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 3.0), st.floats(0.2, 3.0))
def test_h_squared_lowers_by_two_m_omega(m, w):
    reg = build_registry(OscillatorModel(1, m, w, 14))
    cut = interior(reg)
    H2, b = reg["H^2"].matrix, reg["b-"].matrix
    lhs = cut(H2 @ b - b @ H2)
    assert np.abs(lhs + 2 * m * w * cut(b)).max() < 1e-11 * max(1.0, m * w) ** 2


def test_gap():
    assert OscillatorModel(1, 2.0, 0.5, 4).gap == pytest.approx(np.sqrt(2.0))


@pytest.mark.parametrize("kw", [dict(dim=4), dict(dim=1, mass=0.0), dict(dim=1, omega=-1.0)])
def test_model_validation(kw):
    with pytest.raises(ValueError):
        OscillatorModel(**kw)


def test_registry_rejects_unknown_label(reg1):
    with pytest.raises(KeyError):
        reg1["nope"]
