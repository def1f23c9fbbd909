import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diracosc.fockspace3d import find_vacuum
from diracosc.oscillator import OscillatorModel, build_registry
from diracosc.spectrum import (AnalyticLevel, analytic_levels, analytic_levels_2d, analytic_spectrum_1d,
                               analytic_spectrum_3d, eigenvectors_3d, level_multiplicity, match_spectra,
                               numeric_spectrum, raise_eigenvector_1d, spectrum_report, level_energy_3d)


# closed forms -----------------------------------------------------------

def test_1d_closed_form_examples():
    assert analytic_spectrum_1d(1.0, 1e-300, 1) == pytest.approx([-1.0, 1.0, 1.0])
    assert analytic_spectrum_1d(2.0, 0.5, 3)[0] == pytest.approx(-math.sqrt(10))
    with pytest.raises(ValueError):
        analytic_spectrum_1d(1.0, 1.0, 0)


def test_3d_closed_form_examples():
    assert level_energy_3d(1.0, 1.0, 1, 0.5) == ("odd", pytest.approx(math.sqrt(7)))
    assert level_energy_3d(1.0, 1.0, 2, 0.5) == ("even", pytest.approx(math.sqrt(5)))
    lv = analytic_spectrum_3d(1.0, 1.0, 0)
    assert [(l.energy, l.branch, l.degeneracy) for l in lv] == [(1.0, "single", 2)]


@given(st.floats(0.1, 5.0), st.floats(0.1, 5.0), st.integers(0, 5))
def test_3d_levels_come_in_pairs_except_plus_m(m, w, n):
    levels = analytic_spectrum_3d(m, w, n)
    singles = [l for l in levels if l.branch == "single"]
    assert all(l.energy == m for l in singles)
    pos = sorted((l.energy, l.degeneracy) for l in levels if l.branch != "single" and l.energy > 0)
    neg = sorted((-l.energy, l.degeneracy) for l in levels if l.energy < 0)
    assert pos == neg
    total = sum(l.degeneracy for l in levels)
    assert total == sum(2 * (k + 1) ** 2 for k in range(n + 1))


# numerics -------------------------------------------------------------

@pytest.mark.parametrize("dim,n_max", [(1, 14), (2, 7), (3, 5)])
def test_trace_identity_and_trusted_count(dim, n_max):
    model = OscillatorModel(dim, 1.3, 0.7, n_max)
    reg = build_registry(model)
    num = numeric_spectrum(reg)
    H = reg["H"].matrix
    assert np.sum(num.energies) == pytest.approx(np.real(H.diagonal()).sum(), abs=1e-9)
    rep = spectrum_report(reg)
    assert rep.passed, rep.failures[:5]
    expected = sum(lv.multiplicity for lv in analytic_levels(reg))
    assert rep.trusted_count == expected


def test_dense_matches_blocks():
    reg = build_registry(OscillatorModel(2, 1.0, 1.0, 6))
    a, b = numeric_spectrum(reg), numeric_spectrum(reg, method="dense")
    assert np.allclose(np.sort(a.energies), np.sort(b.energies), atol=1e-10)
    assert a.trusted().sum() == b.trusted().sum()
    with pytest.raises(ValueError):
        numeric_spectrum(reg, method="lanczos")


def test_2d_targets_at_default_cutoff(reg2):
    levels = analytic_levels_2d(reg2)
    assert sum(l.multiplicity for l in levels) == 450
    rep = match_spectra(levels, numeric_spectrum(reg2))
    assert rep.passed
    assert level_multiplicity(rep, 1.0) == (30, 30)


def test_plain_float_targets_and_missing_level():
    reg = build_registry(OscillatorModel(1, 1.0, 1.0, 8))
    num = numeric_spectrum(reg)
    rep = match_spectra([1.0], num)
    assert not rep.passed
    assert any("no analytic counterpart" in f or "nearest" in f for f in rep.failures)


def test_shifted_targets_fail_every_match():
    reg = build_registry(OscillatorModel(1, 1.0, 1.0, 10))
    shifted = [lv._replace(energy=lv.energy + 1e-6) for lv in analytic_levels(reg)]
    rep = match_spectra(shifted, numeric_spectrum(reg), tol=1e-8)
    assert len(rep.failures) >= rep.trusted_count
    assert all(row["observed"] == 0 for row in rep.multiplicities)


def test_report_serialisation(reg1):
    rep = spectrum_report(build_registry(OscillatorModel(1, 1.0, 1.0, 10)))
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["E_analytic", "E_numeric", "abs_err", "multiplicity", "labels"]
    assert len(rows) - 1 == len(rep.matches)
    doc = json.loads(rep.to_json())
    assert doc["trusted_count"] == rep.trusted_count


# eigenvectors -----------------------------------------------------------

def test_raise_from_vacuum(reg1):
    vac = find_vacuum(reg1).state
    H = reg1["H"].matrix
    up, e_up = raise_eigenvector_1d(reg1, vac, 1.0, sign=1)
    dn, e_dn = raise_eigenvector_1d(reg1, vac, 1.0, sign=-1)
    assert (e_up, e_dn) == (pytest.approx(math.sqrt(3)), pytest.approx(-math.sqrt(3)))
    for v, e in ((up, e_up), (dn, e_dn)):
        assert np.linalg.norm(H @ v - e * v) < 1e-12 * np.linalg.norm(v)
    assert abs(np.vdot(up, dn)) < 1e-12 * np.linalg.norm(up) * np.linalg.norm(dn)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.sampled_from([1, -1]), min_size=1, max_size=6))
def test_repeated_raising_climbs_the_ladder(reg1, signs):
    psi, e = find_vacuum(reg1).state, 1.0
    H = reg1["H"].matrix
    for k, s in enumerate(signs, start=1):
        psi, e = raise_eigenvector_1d(reg1, psi, e, sign=s)
        psi = psi / np.linalg.norm(psi)
        assert e == pytest.approx(s * math.sqrt(1 + 2 * k))
        assert np.linalg.norm(H @ psi - e * psi) < 1e-10


def test_raise_rejects_bad_input(reg1, reg2):
    vac = find_vacuum(reg1).state
    with pytest.raises(ValueError):
        raise_eigenvector_1d(reg1, vac, 2.0)
    with pytest.raises(ValueError):
        raise_eigenvector_1d(reg1, vac, 1.0, sign=0)
    with pytest.raises(ValueError):
        raise_eigenvector_1d(reg1, np.zeros_like(vac), 1.0)
    num = numeric_spectrum(reg1, vectors=True)
    i = int(np.argmax(num.edge_weights))
    with pytest.raises(ValueError):
        raise_eigenvector_1d(reg1, num.vectors[:, i], num.energies[i])
    with pytest.raises(ValueError):
        raise_eigenvector_1d(reg2, np.zeros(reg2.model.size), 1.0)


@pytest.mark.parametrize("n,j2", [(1, 1), (2, 1), (2, 3), (3, 3), (4, 5)])
def test_eigenvectors_3d(basis3, reg3, n, j2):
    H = reg3["H"].matrix
    (ep, vp), (em, vm) = eigenvectors_3d(basis3, n, j2, 1)
    assert ep == pytest.approx(level_energy_3d(1.0, 1.0, n, j2 / 2)[1]) and em == -ep
    for e, v in ((ep, vp), (em, vm)):
        assert np.linalg.norm(H @ v - e * v) < 1e-9 * np.linalg.norm(v)


def test_eigenvectors_3d_examples(basis3, reg3):
    (ep, _), _ = eigenvectors_3d(basis3, 1, 1, 1)
    assert ep == pytest.approx(math.sqrt(7))
    (e0, v0), (em, none) = eigenvectors_3d(basis3, 0, 1, -1)
    assert (e0, em, none) == (1.0, -1.0, None)
    assert np.linalg.norm(reg3["H"].matrix @ v0 - v0) < 1e-12 * np.linalg.norm(v0)
    with pytest.raises(ValueError):
        eigenvectors_3d(basis3, 9, 1, 1)


def test_analytic_level_labels():
    lv = AnalyticLevel(1.0, 2, 0, (("n", 0), ("sign", "+")))
    assert lv.label_text() == "n=0 sign=+"
