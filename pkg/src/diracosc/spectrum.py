"""Closed-form spectra, truncated diagonalisation and trust-window matching.

The truncated Hamiltonian commutes exactly with the excitation number
``K = (total boson occupation) + [beta = -1]``, so it is diagonalised block
by block.  In 2D and 3D ``K`` is the eigenvalue of ``N``; in 1D it is the
level index ``n`` of ``+-sqrt(m^2 + 2 n m w)``.

Eigenvectors are *trusted* when their weight on the top two boson shells
(total occupation > n_max - 2) is below ``edge_tol``.  Trusted eigenvalues are
compared with closed-form levels whose quantum number ``n`` lies in the same
window, multiplicities included.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .fock import total_occupation
from .fockspace3d import FockBasis3D, find_vacuum, safe_label
from .oscillator import OscillatorModel, build_hamiltonian, excitation_number
from .report import VerificationReport

HERMITIAN_TOL = 1e-10


# ------------------------------------------------------------ closed forms

class AnalyticLevel(NamedTuple):
    energy: float
    multiplicity: int
    n: int
    labels: Tuple[Tuple[str, object], ...] = ()

    def label_text(self):
        return " ".join(f"{k}={v}" for k, v in self.labels)


class Level3D(NamedTuple):
    energy: float
    n: int
    j: float
    branch: str  # "odd", "even" or "single"
    degeneracy: int


def analytic_spectrum_1d(m, omega, n_levels) -> List[float]:
    """``m`` together with ``+-sqrt(m^2 + 2 n m w)`` for n = 1..n_levels, sorted."""
    if n_levels < 1:
        raise ValueError("n_levels must be at least 1")
    out = [float(m)]
    for n in range(1, n_levels + 1):
        e = math.sqrt(m * m + 2 * n * m * omega)
        out += [e, -e]
    return sorted(out)


def analytic_levels_1d(m, omega, n_top, copies=2) -> List[AnalyticLevel]:
    """1D levels labelled by n, each repeated ``copies`` times.

    The four-component spinor carries two decoupled copies of the
    two-component oscillator, hence the default ``copies=2``.
    """
    levels = [AnalyticLevel(float(m), copies, 0, (("n", 0),))]
    for n in range(1, n_top + 1):
        e = math.sqrt(m * m + 2 * n * m * omega)
        levels += [AnalyticLevel(-e, copies, n, (("n", n), ("sign", "-"))),
                   AnalyticLevel(e, copies, n, (("n", n), ("sign", "+")))]
    return levels


def level_energy_3d(m, omega, n, j) -> Tuple[str, float]:
    """Branch name and positive energy of the (n, j) level.

    The branch is "odd" or "even" by the parity of n - j + 1/2.
    """
    parity = int(round(n - j + 0.5)) % 2
    if parity:
        e2 = 2 * m * omega * (n + j) + 3 * m * omega + m * m
    else:
        e2 = 2 * m * omega * (n - j) + m * omega + m * m
    return ("odd" if parity else "even"), math.sqrt(e2)


def analytic_spectrum_3d(m, omega, n_max_quantum) -> List[Level3D]:
    """Enumerate (n, j) with both signs of the energy.

    For j <= n - 1/2 both orbital branches l = j -+ 1/2 exist and the pair of
    eigenvectors carries E+ and E-.  For j = n + 1/2 only l = n exists; the
    single eigenvector has E = +m (the E- combination would need the missing
    l = n + 1 state), recorded with branch "single".
    """
    out = []
    for n in range(n_max_quantum + 1):
        for j2 in range(1, 2 * n + 2, 2):
            j = j2 / 2
            if j2 == 2 * n + 1:
                out.append(Level3D(float(m), n, j, "single", j2 + 1))
                continue
            branch, e = level_energy_3d(m, omega, n, j)
            out += [Level3D(-e, n, j, branch, j2 + 1), Level3D(e, n, j, branch, j2 + 1)]
    return sorted(out)


def analytic_levels_3d(m, omega, n_top) -> List[AnalyticLevel]:
    return [AnalyticLevel(lv.energy, lv.degeneracy, lv.n,
                          (("n", lv.n), ("j", f"{int(2 * lv.j)}/2"), ("branch", lv.branch)))
            for lv in analytic_spectrum_3d(m, omega, n_top)]


def analytic_levels_2d(registry, n_top=None, cluster_tol=1e-8) -> List[AnalyticLevel]:
    """2D targets from the joint spectrum of N and C_LS.

    Within each N = n eigenspace, C_LS is diagonalised; an eigenvalue c of
    multiplicity d gives E^2 = 2 m w (n + c) + m w + m^2.  The split of the d
    states between +E and -E is read from the trace of H on that joint
    eigenspace, ``#(+E) = (d + tr(H|V) / E) / 2``.
    """
    model = registry.model
    m, w = model.mass, model.omega
    n_top = model.n_max - 2 if n_top is None else n_top
    ndiag = np.real(registry["N"].matrix.diagonal())
    C = registry["CLS"].matrix
    H = registry["H"].matrix
    levels = []
    for n in range(n_top + 1):
        idx = np.flatnonzero(np.abs(ndiag - n) < 1e-9)
        cvals, cvecs = np.linalg.eigh(C[idx][:, idx].toarray())
        Hb = H[idx][:, idx].toarray()
        start = 0
        while start < len(cvals):
            stop = start + 1
            while stop < len(cvals) and cvals[stop] - cvals[start] < cluster_tol:
                stop += 1
            c = float(np.mean(cvals[start:stop]))
            d = stop - start
            V = cvecs[:, start:stop]
            e2 = 2 * m * w * (n + c) + m * w + m * m
            if e2 <= 0:
                raise ArithmeticError(f"non-positive E^2 = {e2} at n={n}, c={c}")
            e = math.sqrt(e2)
            trace = float(np.real(np.trace(V.conj().T @ Hb @ V)))
            plus = int(round((d + trace / e) / 2))
            labels = (("n", n), ("c", round(c, 10)))
            if plus:
                levels.append(AnalyticLevel(e, plus, n, labels + (("sign", "+"),)))
            if d - plus:
                levels.append(AnalyticLevel(-e, d - plus, n, labels + (("sign", "-"),)))
            start = stop
    return sorted(levels)


def analytic_levels(registry, n_top=None) -> List[AnalyticLevel]:
    model = registry.model
    n_top = model.n_max - 2 if n_top is None else n_top
    if model.dim == 1:
        return analytic_levels_1d(model.mass, model.omega, n_top, copies=model.spinor_dim // 2)
    if model.dim == 2:
        return analytic_levels_2d(registry, n_top)
    return analytic_levels_3d(model.mass, model.omega, n_top)


# ------------------------------------------------------------- numerics

@dataclass
class NumericSpectrum:
    energies: np.ndarray
    edge_weights: np.ndarray
    k: np.ndarray
    n_max: int
    vectors: Optional[np.ndarray] = None

    def trusted(self, edge_tol=1e-8) -> np.ndarray:
        return self.edge_weights < edge_tol

    def __len__(self):
        return len(self.energies)


def _edge_mask(model):
    return total_occupation(model.dim, model.cutoff, model.spinor_dim) > model.n_max - 2


def _check_hermitian(H):
    diff = abs(H - H.conj().T)
    if diff.nnz and diff.max() > HERMITIAN_TOL:
        raise ValueError(f"H is not Hermitian: max |H - H^dagger| = {diff.max():.3e}")


def numeric_spectrum(source, method="blocks", vectors=False, cluster_tol=1e-9) -> NumericSpectrum:
    """Full eigen-decomposition of the truncated H with edge weights.

    ``source`` is an OscillatorModel or a registry.  ``method="blocks"``
    diagonalises each excitation-number block; ``method="dense"`` uses one
    dense solve and rotates each degenerate cluster so that its edge weight
    is concentrated on as few vectors as possible.
    """
    if isinstance(source, OscillatorModel):
        model, registry = source, None
        H = build_hamiltonian(model).matrix
    else:
        registry, model = source, source.model
        H = registry["H"].matrix
    _check_hermitian(H)
    edge = _edge_mask(model)
    K = excitation_number(registry if registry is not None else model)
    size = H.shape[0]
    if method == "blocks":
        evals, weights, ks, cols = [], [], [], []
        V = np.zeros((size, size), dtype=complex) if vectors else None
        for k in np.unique(K):
            idx = np.flatnonzero(K == k)
            e, v = np.linalg.eigh(H[idx][:, idx].toarray())
            evals.append(e)
            weights.append(np.sum(np.abs(v[edge[idx]]) ** 2, axis=0))
            ks.append(np.full(len(e), k))
            if vectors:
                cols.append((idx, v))
        energies = np.concatenate(evals)
        edge_w = np.concatenate(weights)
        kk = np.concatenate(ks)
        order = np.lexsort((edge_w, energies))
        if vectors:
            start = 0
            for idx, v in cols:
                V[np.ix_(idx, np.arange(start, start + v.shape[1]))] = v
                start += v.shape[1]
            V = V[:, order]
        return NumericSpectrum(energies[order], edge_w[order], kk[order], model.n_max, V)
    if method != "dense":
        raise ValueError(f"unknown method {method!r}; use 'blocks' or 'dense'")
    energies, V = np.linalg.eigh(H.toarray())
    start = 0
    while start < size:
        stop = start + 1
        while stop < size and energies[stop] - energies[start] < cluster_tol:
            stop += 1
        if stop - start > 1:
            block = V[:, start:stop]
            P = block[edge].conj().T @ block[edge]
            _, R = np.linalg.eigh(P)
            V[:, start:stop] = block @ R
        start = stop
    edge_w = np.sum(np.abs(V[edge]) ** 2, axis=0)
    kk = np.array([int(K[np.argmax(np.abs(V[:, i]))]) for i in range(size)])
    return NumericSpectrum(energies, edge_w, kk, model.n_max, V if vectors else None)


# ------------------------------------------------------------- matching

@dataclass
class Match:
    e_analytic: Optional[float]
    e_numeric: float
    abs_err: Optional[float]
    multiplicity: Optional[int]
    labels: str


@dataclass
class SpectrumReport:
    analytic: List[Tuple[float, int, List[str]]]
    numeric: List[Tuple[float, float]]
    matches: List[Match]
    trusted_count: int
    multiplicities: List[Dict[str, object]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    tol: float = 1e-8
    edge_tol: float = 1e-8
    window: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_error(self) -> float:
        return max((mt.abs_err for mt in self.matches if mt.abs_err is not None), default=0.0)

    def as_dict(self):
        return {
            "passed": self.passed,
            "tol": self.tol,
            "edge_tol": self.edge_tol,
            "window": self.window,
            "trusted_count": self.trusted_count,
            "max_error": self.max_error,
            "analytic": [{"energy": e, "multiplicity": k, "labels": lab} for e, k, lab in self.analytic],
            "multiplicities": self.multiplicities,
            "matches": [vars(mt) for mt in self.matches],
            "failures": self.failures,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["E_analytic", "E_numeric", "abs_err", "multiplicity", "labels"])
        for mt in self.matches:
            writer.writerow(["" if mt.e_analytic is None else repr(mt.e_analytic), repr(mt.e_numeric),
                             "" if mt.abs_err is None else repr(mt.abs_err),
                             "" if mt.multiplicity is None else mt.multiplicity, mt.labels])
        return buf.getvalue()


def aggregate_levels(levels: Sequence[AnalyticLevel], window=None, merge_tol=1e-9):
    """Merge coincident energies inside the window: ``[(E, multiplicity, [labels])]``."""
    kept = sorted(lv for lv in levels if window is None or lv.n <= window)
    out = []
    for lv in kept:
        if out and abs(lv.energy - out[-1][0]) <= merge_tol:
            e, k, labs = out[-1]
            out[-1] = (e, k + lv.multiplicity, labs + [lv.label_text()])
        else:
            out.append((lv.energy, lv.multiplicity, [lv.label_text()]))
    return out


def match_spectra(analytic, numeric: NumericSpectrum, tol=1e-8, edge_tol=1e-8, window=None) -> SpectrumReport:
    """Match trusted numeric eigenvalues against closed-form levels.

    ``analytic`` is a list of AnalyticLevel or of plain energies (each with
    multiplicity one and n = 0).  Every trusted eigenvalue must lie within
    ``tol`` of an analytic energy, and the trusted count at each analytic
    energy must equal its multiplicity summed over levels with n <= window.
    """
    window = numeric.n_max - 2 if window is None else window
    levels = [lv if isinstance(lv, AnalyticLevel) else AnalyticLevel(float(lv), 1, 0) for lv in analytic]
    agg = aggregate_levels(levels, window)
    targets = np.array([e for e, _, _ in agg])
    trusted = numeric.trusted(edge_tol)
    report = SpectrumReport(agg, [(float(e), float(w)) for e, w in zip(numeric.energies, numeric.edge_weights)],
                            [], int(trusted.sum()), tol=tol, edge_tol=edge_tol, window=window)
    counts = np.zeros(len(agg), dtype=int)
    for e in numeric.energies[trusted]:
        if len(targets) == 0:
            report.matches.append(Match(None, float(e), None, None, ""))
            report.failures.append(f"trusted eigenvalue {e:.12g} has no analytic counterpart")
            continue
        i = int(np.argmin(np.abs(targets - e)))
        err = float(abs(targets[i] - e))
        if err <= tol:
            counts[i] += 1
            report.matches.append(Match(float(targets[i]), float(e), err, agg[i][1], "; ".join(agg[i][2])))
        else:
            report.matches.append(Match(None, float(e), None, None, ""))
            report.failures.append(f"trusted eigenvalue {e:.12g} is {err:.3e} from the nearest analytic level")
    for (e, mult, labs), got in zip(agg, counts):
        report.multiplicities.append({"energy": e, "expected": mult, "observed": int(got)})
        if got != mult:
            report.failures.append(f"energy {e:.12g}: expected multiplicity {mult}, found {got} trusted")
    return report


def spectrum_report(registry, tol=1e-8, edge_tol=1e-8, method="blocks") -> SpectrumReport:
    """Closed-form levels for the registry's dimension matched against its numerics."""
    return match_spectra(analytic_levels(registry), numeric_spectrum(registry, method), tol, edge_tol)


def level_multiplicity(report: SpectrumReport, energy, tol=1e-9) -> Tuple[int, int]:
    """(expected, observed) trusted multiplicity at ``energy``; (0, 0) if absent."""
    for row in report.multiplicities:
        if abs(row["energy"] - energy) <= tol:
            return row["expected"], row["observed"]
    return 0, 0


# ------------------------------------------------------ vacuum and eigenvectors

def _edge_weight(model, psi):
    edge = _edge_mask(model)
    return float(np.sum(np.abs(psi[edge]) ** 2) / max(np.vdot(psi, psi).real, 1e-300))


def vacuum_checks(registry, tol=1e-12) -> VerificationReport:
    """beta vac = vac, H0 vac = 0 and H vac = m vac on every vacuum direction."""
    model = registry.model
    vac = find_vacuum(registry)
    report = VerificationReport("vacuum", tol, meta={"kernel_dim": vac.kernel_dim})
    beta, H = registry["beta"].matrix, registry["H"].matrix
    H0 = registry["H0"].matrix if "H0" in registry else H - model.mass * beta
    worst = {"beta vac = vac": 0.0, "H0 vac = 0": 0.0, "H vac = m vac": 0.0}
    for i in range(vac.kernel.shape[1]):
        v = vac.kernel[:, i]
        worst["beta vac = vac"] = max(worst["beta vac = vac"], float(np.max(np.abs(beta @ v - v))))
        worst["H0 vac = 0"] = max(worst["H0 vac = 0"], float(np.max(np.abs(H0 @ v))))
        worst["H vac = m vac"] = max(worst["H vac = m vac"], float(np.max(np.abs(H @ v - model.mass * v))))
    for k, r in worst.items():
        report.add(k, r)
    return report


def raise_eigenvector_1d(registry, psi, E, sign=1, tol=1e-8, edge_tol=1e-8):
    """``(E + sign*sqrt(E^2 + 2mw)) b+ psi + sqrt(2mw) s+ psi``.

    Returns ``(state, energy)`` with energy ``sign * sqrt(E^2 + 2mw)``.  The
    input must be an eigenvector of H with eigenvalue E and carry no weight on
    the top two shells.
    """
    model = registry.model
    if model.dim != 1:
        raise ValueError("raise_eigenvector_1d needs a 1D registry")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    H = registry["H"].matrix
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("psi is the zero vector")
    res = np.linalg.norm(H @ psi - E * psi) / norm
    if res > tol:
        raise ValueError(f"psi is not an eigenvector of H with eigenvalue {E}: residual {res:.3e}")
    if _edge_weight(model, psi) >= edge_tol:
        raise ValueError("psi has weight on the top two Fock shells; raise the cutoff")
    g = model.gap
    root = math.sqrt(E * E + g * g)
    out = (E + sign * root) * (registry["b+"].matrix @ psi) + g * (registry["s+"].matrix @ psi)
    return out, sign * root


def eigenvectors_3d(basis: FockBasis3D, n, j2, j3x2):
    """Energy eigenvectors built from |n,l,j,j3> with l = j -+ 1/2.

    Returns ``((E+, v+), (E-, v-))``.  Odd branch (n - j + 1/2 odd):
    ``(E - m)|n, j-1/2> + sqrt(2mw)|n, j+1/2>``; even branch:
    ``sqrt(2mw)|n, j-1/2> + (E - m)|n, j+1/2>``.  When j = n + 1/2 the
    l = j + 1/2 state does not exist; the even-branch E+ = m vector survives
    (its missing coefficient vanishes) and ``(-m, None)`` is returned for E-.
    """
    model = basis.registry.model
    m, g = model.mass, model.gap
    if n > basis.n_build:
        raise ValueError(f"n={n} exceeds the built range 0..{basis.n_build}")
    lo = safe_label(n, (j2 - 1) // 2, j2, j3x2)
    if lo is None or lo not in basis:
        raise ValueError(f"no basis vector |{n},{(j2 - 1) // 2},{j2}/2,{j3x2}/2>")
    hi = safe_label(n, (j2 + 1) // 2, j2, j3x2)
    v_lo = basis[lo]
    v_hi = None if hi is None else basis.vectors.get(hi)
    j = j2 / 2
    if v_hi is None:
        return (m, g * v_lo), (-m, None)
    branch, e = level_energy_3d(m, model.omega, n, j)
    out = []
    for E in (e, -e):
        if branch == "odd":
            v = (E - m) * v_lo + g * v_hi
        else:
            v = g * v_lo + (E - m) * v_hi
        out.append((E, v))
    return tuple(out)
