import io
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from diracosc.fockspace3d import (FockLabel3D, basis_invariants, build_basis, export_jsonl,
                                  find_vacuum, injectivity_report, labels_up_to, t_power_brackets,
                                  verify_actions)
from diracosc.oscillator import OscillatorModel, build_registry
from diracosc.spectrum import excitation_number


@given(st.integers(0, 6), st.integers(-1, 7), st.integers(-2, 15), st.integers(-16, 16))
def test_label_validation(n, l, j2, j3x2):
    valid = (0 <= l <= n and j2 >= 1 and j2 in (2 * l + 1, 2 * l - 1)
             and abs(j3x2) <= j2 and (j2 - j3x2) % 2 == 0)
    if valid:
        lab = FockLabel3D(n, l, j2, j3x2)
        assert lab.j == j2 / 2 and lab.upper_branch == (j2 == 2 * l + 1)
    else:
        with pytest.raises(ValueError):
            FockLabel3D(n, l, j2, j3x2)


@pytest.mark.parametrize("n_build", range(5))
def test_label_counts(n_build):
    labs = labels_up_to(n_build)
    assert len(labs) == sum(2 * (n + 1) ** 2 for n in range(n_build + 1))
    assert len(set(labs)) == len(labs)


def test_vacuum(reg3):
    vac = find_vacuum(reg3)
    assert vac.kernel_dim == 1
    assert vac.residual < 1e-12
    v = vac.state
    assert np.abs(reg3["beta"].matrix @ v - v).max() < 1e-12
    assert abs(np.vdot(v, reg3["N"].matrix @ v)) < 1e-12


def test_ground_doublet_is_spin_raised_vacuum(basis3, reg3):
    v = basis3.get(0, 0, 1, 1)
    assert np.allclose(v, reg3["S+"].matrix @ basis3.vacuum)
    assert np.abs(reg3["J+"].matrix @ v).max() < 1e-12


def test_highest_weights_are_killed_by_j_plus(basis3, reg3):
    Jp = reg3["J+"].matrix
    for lab in basis3.labels:
        if lab.j3x2 == lab.j2:
            assert np.abs(Jp @ basis3[lab]).max() < 1e-9 * np.linalg.norm(basis3[lab])


def test_basis_spans_the_trusted_blocks(basis3, reg3):
    V = basis3.stacked()
    K = excitation_number(reg3)
    inside = K <= basis3.n_build
    assert V.shape[1] == inside.sum()
    assert np.abs(V[~inside]).max() == 0
    Q, _ = np.linalg.qr(V[inside])
    sv = np.linalg.svd(Q, compute_uv=False)
    assert sv.min() > 1 - 1e-10


def test_invariants_actions_injectivity(basis3, reg3):
    assert basis_invariants(basis3).passed
    assert verify_actions(basis3, n_limit=2).passed
    inj = injectivity_report(reg3)
    assert inj.passed


def test_t_power_brackets():
    reg = build_registry(OscillatorModel(3, 1.0, 1.0, 12))
    rep = t_power_brackets(reg, k_max=4)
    assert rep.passed and len(rep.checks) == 4
    with pytest.raises(ValueError):
        t_power_brackets(build_registry(OscillatorModel(3, 1.0, 1.0, 5)), k_max=4)


def test_export_round_trip(basis3):
    buf = io.StringIO()
    export_jsonl(basis3, buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == len(basis3.labels)
    for line in lines[::25]:
        rec = json.loads(line)
        lab = FockLabel3D(rec["n"], rec["l"], rec["j2"], rec["j3x2"])
        v = np.zeros(basis3.vacuum.shape, dtype=complex)
        for i, re, im in rec["coefficients"]:
            v[i] = re + 1j * im
        assert np.abs(v - basis3[lab]).max() < 1e-12 * max(1.0, rec["norm"])


def test_build_basis_rejects_bad_input(reg3, reg2):
    with pytest.raises(ValueError):
        build_basis(reg3, n_build=7)
    with pytest.raises(ValueError):
        build_basis(reg2)
