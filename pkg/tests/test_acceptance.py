"""Acceptance criteria 1-11, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints
one PASS/FAIL line per criterion.
"""

import math
import time

import pytest

from diracosc.clifford import dirac_representation, verify_clifford
from diracosc.fockspace3d import verify_actions
from diracosc.graded.chiral import chiral_annihilation
from diracosc.graded.specs import get_spec
from diracosc.graded.verify import check_relations, colour_jacobi_sweep, verify_algebra
from diracosc.oscillator import OscillatorModel, build_registry
from diracosc.parastat import parastatistics_audit
from diracosc.spectrum import (analytic_levels_3d, level_multiplicity, match_spectra,
                               numeric_spectrum, vacuum_checks)


def _line(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")


def _failures(*reports, limit=12):
    bad = [f"{r.name}:{c.id}={c.residual:.2e}" for r in reports for c in r.failures()]
    return ", ".join(bad[:limit]) + (" ..." if len(bad) > limit else "")


@pytest.mark.criterion(1, "Clifford generators anticommute exactly, d = 1, 2, 3, under 1 s")
def test_criterion_01_clifford():
    t0 = time.perf_counter()
    reports = [verify_clifford(dirac_representation(d)) for d in (1, 2, 3)]
    elapsed = time.perf_counter() - t0
    worst = max(r.max_residual for r in reports)
    ok = all(r.passed for r in reports) and worst == 0.0 and elapsed < 1.0
    _line(1, ok, f"max residual {worst:.1e}, {elapsed:.3f} s")
    assert worst == 0.0
    assert elapsed < 1.0


@pytest.mark.criterion(2, "1D pso(3|2), bfa(1|1) and interleave relations < 1e-10 at n_max=40, depth 2, under 5 s")
def test_criterion_02_algebra_1d():
    t0 = time.perf_counter()
    reg = build_registry(OscillatorModel(1, 1.0, 1.0, 40))
    reports = [verify_algebra(get_spec(name), reg, tol=1e-10, depth=2)
               for name in ("pso(3|2)", "bfa(1|1)", "interleave-1d")]
    elapsed = time.perf_counter() - t0
    worst = max(r.max_residual for r in reports)
    _line(2, all(r.passed for r in reports) and elapsed < 5, f"max residual {worst:.1e}, {elapsed:.2f} s")
    assert all(r.passed for r in reports), _failures(*reports)
    assert elapsed < 5.0


@pytest.mark.criterion(3, "1D trusted spectrum at n_max=60 starts {1, +-sqrt3, +-sqrt5, +-sqrt7, +-3} within 1e-8")
def test_criterion_03_spectrum_1d():
    reg = build_registry(OscillatorModel(1, 1.0, 1.0, 60))
    num = numeric_spectrum(reg)
    trusted = num.energies[num.trusted(1e-8)]
    distinct = []
    for e in sorted(trusted, key=abs):
        if not distinct or all(abs(e - d) > 1e-6 for d in distinct):
            distinct.append(e)
    first9 = sorted(distinct[:9])
    target = sorted([1.0] + [s * math.sqrt(v) for v in (3, 5, 7, 9) for s in (1, -1)])
    err = max(abs(a - b) for a, b in zip(first9, target))
    _line(3, err < 1e-8, f"max error {err:.1e} over the first 9 trusted levels")
    assert len(first9) == 9
    assert err < 1e-8


@pytest.mark.criterion(4, "1D vacuum: beta vac = vac, H0 vac = 0, H vac = m vac, each < 1e-12")
def test_criterion_04_vacuum(reg1):
    rep = vacuum_checks(reg1, tol=1e-12)
    _line(4, rep.passed, f"max residual {rep.max_residual:.1e} over {rep.meta['kernel_dim']} kernel vectors")
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(5, "2D pso+-(3|4) tables < 1e-10 at n_max=16; each copy annihilates 50 random states of the other half")
def test_criterion_05_pso34(reg2):
    reports = [verify_algebra(get_spec(n), reg2, tol=1e-10) for n in ("pso+(3|4)", "pso-(3|4)")]
    reports.append(chiral_annihilation(reg2, n_states=50, seed=0, tol=1e-10))
    worst = max(r.max_residual for r in reports)
    ok = all(r.passed for r in reports)
    _line(5, ok, f"max residual {worst:.1e}")
    assert ok, _failures(*reports)


@pytest.mark.criterion(6, "2D witnesses {s1-,s2+} = [a1-,a2+] = -[c1-,c2+] = -2 beta S0 (< 1e-12); [H,c] = 0; [H^2,a] = +-4mw a")
def test_criterion_06_witnesses(reg2):
    printed = check_relations(get_spec("witnesses-2d"), reg2, tol=1e-12, literal=True)
    ident = get_spec("identities-2d")
    ladders = check_relations(ident, reg2, tol=1e-12)
    ladders.checks = [c for c in ladders.checks if c.id.startswith(("[H,c]", "[H^2,a]"))]
    ok = printed.passed and ladders.passed
    _line(6, ok, f"printed witness forms: {_failures(printed) or 'all pass'}; "
                 f"[H,c]/[H^2,a] max residual {ladders.max_residual:.1e}")
    assert ladders.checks and ladders.passed, _failures(ladders)
    assert printed.passed, _failures(printed)


@pytest.mark.criterion(7, "3D H^2, T^2, braid bracket, osp01(1|2)+sl10(1|1) and enlarged tables < 1e-10 at n_max=8, depth 2, under 60 s")
def test_criterion_07_identities_3d():
    t0 = time.perf_counter()
    reg = build_registry(OscillatorModel(3, 1.0, 1.0, 8))
    reports = [verify_algebra(get_spec(n), reg, tol=1e-10, depth=2)
               for n in ("identities-3d", "osp01(1|2)+sl10(1|1)", "osp01(1|2)+gl10(1|1)+a11")]
    elapsed = time.perf_counter() - t0
    ids = {c.id for r in reports for c in r.checks}
    worst = max(r.max_residual for r in reports)
    ok = all(r.passed for r in reports) and elapsed < 60
    _line(7, ok, f"max residual {worst:.1e}, {elapsed:.1f} s")
    assert {"H^2", "T^2[x=-]", "T^2[x=+]", "H^2_under", "braid:B[x=-]", "braid:S[x=+]"} <= ids
    assert all(r.passed for r in reports), _failures(*reports)
    assert elapsed < 60.0


@pytest.mark.criterion(8, "3D Fock actions (i)-(v) to 1e-8 for every label with n <= 5, zero cases included")
def test_criterion_08_fock_actions(basis3):
    rep = verify_actions(basis3, tol=1e-8, n_limit=5)
    by_id = {c.id: c for c in rep.checks}
    # B-s kills |n,n,n+1/2,j3>: the (v) coefficient n - j + 1/2 vanishes
    kills = [by_id[f"v:{lab}"] for lab in basis3.labels if lab.n <= 5 and lab.n == lab.l and lab.upper_branch]
    _line(8, rep.passed, f"{len(rep.checks)} checks, max residual {rep.max_residual:.1e}, "
                         f"{len(kills)} B-s kill checks")
    assert kills and all(c.passed for c in kills)
    assert rep.passed, _failures(rep)


@pytest.mark.criterion(9, "3D trusted spectrum at n_max=8 matches E+- within 1e-7 with aggregated multiplicities; +-1 counts as predicted")
def test_criterion_09_spectrum_3d(reg3):
    rep = match_spectra(analytic_levels_3d(1.0, 1.0, 6), numeric_spectrum(reg3), tol=1e-7, edge_tol=1e-8)
    plus = level_multiplicity(rep, 1.0)
    minus = level_multiplicity(rep, -1.0)
    predicted_plus = sum(2 * n + 2 for n in range(7))
    ok = rep.passed and plus == (predicted_plus, predicted_plus) and minus[1] == minus[0]
    _line(9, ok, f"{rep.trusted_count} trusted, max error {rep.max_error:.1e}, "
                 f"+1 multiplicity {plus[1]} (predicted {predicted_plus}), -1 multiplicity {minus[1]}")
    assert rep.passed, rep.failures[:10]
    assert plus == (predicted_plus, predicted_plus)
    assert minus == (0, 0)


@pytest.mark.criterion(10, "Z2^3 table as printed, closure, colour Jacobi and split-H brackets < 1e-10 at n_max=8")
def test_criterion_10_z2cubed(reg3):
    table = verify_algebra(get_spec("z2cubed"), reg3, tol=1e-10, literal=True)
    jacobi = colour_jacobi_sweep(get_spec("z2cubed"), reg3, tol=1e-10)
    split = verify_algebra(get_spec("hamiltonian-z2cubed"), reg3, tol=1e-10)
    ok = table.passed and jacobi.passed and split.passed
    _line(10, ok, f"table: {_failures(table) or 'all pass'}; jacobi max {jacobi.max_residual:.1e}; "
                  f"split-H max {split.max_residual:.1e}")
    assert jacobi.passed, _failures(jacobi)
    assert split.passed, _failures(split)
    assert table.passed, _failures(table)


@pytest.mark.criterion(11, "parastatistics pass/fail matrix matches the stated outcomes in 1D, 2D and 3D")
def test_criterion_11_parastat(reg1, reg2, reg3):
    reports = [parastatistics_audit(r) for r in (reg1, reg2, reg3)]
    ok = all(r.passed for r in reports)
    _line(11, ok, "; ".join(f"{r.name}: {sum(c.passed for c in r.checks)}/{len(r.checks)}" for r in reports))
    assert ok, _failures(*reports)
    m3 = reports[2].meta["matrix"]
    assert m3["B"]["paraboson"]["satisfied"] and not m3["B"]["boson"]["satisfied"]
    assert m3["S"]["fermion"]["satisfied"]
    assert not m3["S|B"]["relative-parafermion"]["satisfied"]
    assert not m3["S|B"]["relative-paraboson"]["satisfied"]
