"""Labelled Fock basis |n, l, j, j3> of the 3D oscillator and its ladder actions.

Half-integers are stored doubled (``j2 = 2j``, ``j3x2 = 2*j3``) so labels stay
exact.  Basis vectors are built by the operator words

    j = l + 1/2:  (T+)^(n-l) (J-)^(j-j3) w^l S+ |0>
    j = l - 1/2:  (T+)^(n-l) (J-)^(j-j3) (w^l + w^(l-1) b3+ S+) |0>

with ``w = b1+ + i b2+`` and are left unnormalised.
"""

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import sparse

from .fock import interior_mask, total_occupation
from .graded.core import max_abs
from .oscillator import excitation_number
from .report import VerificationReport


@dataclass(frozen=True, order=True)
class FockLabel3D:
    n: int
    l: int
    j2: int
    j3x2: int

    def __post_init__(self):
        if self.n < 0 or not 0 <= self.l <= self.n:
            raise ValueError(f"need 0 <= l <= n, got n={self.n}, l={self.l}")
        if self.j2 not in (2 * self.l + 1, 2 * self.l - 1) or self.j2 < 1:
            raise ValueError(f"j must be l +/- 1/2 with j >= 1/2, got l={self.l}, j={self.j2}/2")
        if abs(self.j3x2) > self.j2 or (self.j2 - self.j3x2) % 2:
            raise ValueError(f"j3 must lie in -j..j in integer steps, got j={self.j2}/2, j3={self.j3x2}/2")

    @property
    def j(self) -> float:
        return self.j2 / 2

    @property
    def j3(self) -> float:
        return self.j3x2 / 2

    @property
    def upper_branch(self) -> bool:
        """True for j = l + 1/2."""
        return self.j2 == 2 * self.l + 1

    def __str__(self):
        return f"|{self.n},{self.l},{self.j2}/2,{self.j3x2}/2>"


def labels_up_to(n_build) -> List[FockLabel3D]:
    out = []
    for n in range(n_build + 1):
        for l in range(n + 1):
            for j2 in (2 * l + 1, 2 * l - 1):
                if j2 < 1:
                    continue
                for j3x2 in range(-j2, j2 + 1, 2):
                    out.append(FockLabel3D(n, l, j2, j3x2))
    return sorted(out)


def safe_label(n, l, j2, j3x2) -> Optional[FockLabel3D]:
    try:
        return FockLabel3D(n, l, j2, j3x2)
    except ValueError:
        return None


# ---------------------------------------------------------------- vacuum

_VACUUM_OPS = {1: ["b-", "s-"], 2: ["b1-", "b2-", "s1-", "s2-"],
               3: ["b1-", "b2-", "b3-", "s1-", "s2-", "s3-", "S-"]}


@dataclass
class Vacuum:
    state: np.ndarray
    kernel_dim: int
    kernel: np.ndarray
    residual: float


def find_vacuum(registry, tol=1e-10) -> Vacuum:
    """Joint kernel of the annihilators, from the low end of sum X^dagger X.

    In 3D the annihilators include the spin lowering operator S-.  Each
    annihilator shifts the excitation number K by a fixed amount, so
    ``sum X^dagger X`` is block diagonal in K and its kernel is found exactly,
    block by block.  Kernel vectors are therefore supported on a single block
    with no round-off elsewhere.  The returned state is deterministic: the
    kernel projection of the basis vector with the largest kernel weight,
    normalised with a real positive leading entry.
    """
    dim = registry.model.dim
    ops = [registry[k].matrix for k in _VACUUM_OPS[dim]]
    M = sum((x.conj().T @ x for x in ops[1:]), ops[0].conj().T @ ops[0]).tocsr()
    K = excitation_number(registry)
    cols = []
    for k in np.unique(K):
        idx = np.flatnonzero(K == k)
        vals, vecs = np.linalg.eigh(M[idx][:, idx].toarray())
        for v in vecs[:, vals < tol].T:
            full = np.zeros(M.shape[0], dtype=complex)
            full[idx] = v
            cols.append(full)
    if not cols:
        raise RuntimeError("the annihilators have no common kernel; check the operator construction")
    Q = np.column_stack(cols)
    weights = np.sum(np.abs(Q) ** 2, axis=1)
    i = int(np.argmax(weights))
    vac = Q @ Q[i].conj()
    vac = vac / np.linalg.norm(vac)
    lead = vac[np.argmax(np.abs(vac))]
    vac = vac * (abs(lead) / lead)
    residual = max(float(np.max(np.abs(x @ vac))) for x in ops)
    return Vacuum(vac, Q.shape[1], Q, residual)


# ------------------------------------------------------------------ basis

@dataclass
class FockBasis3D:
    registry: object
    n_build: int
    vacuum: np.ndarray
    vectors: Dict[FockLabel3D, np.ndarray] = field(default_factory=dict)

    @property
    def labels(self) -> List[FockLabel3D]:
        return sorted(self.vectors)

    def __getitem__(self, label) -> np.ndarray:
        return self.vectors[label]

    def __contains__(self, label):
        return label in self.vectors

    def get(self, n, l, j2, j3x2):
        lab = safe_label(n, l, j2, j3x2)
        return None if lab is None else self.vectors.get(lab)

    def stacked(self, labels=None) -> np.ndarray:
        labels = self.labels if labels is None else labels
        return np.column_stack([self.vectors[l] for l in labels])


def build_basis(registry, n_build=None, vacuum=None, check=True) -> FockBasis3D:
    """Construct every |n,l,j,j3> with n <= n_build (default n_max - 2)."""
    model = registry.model
    if model.dim != 3:
        raise ValueError("the labelled Fock basis is defined for the 3D oscillator")
    limit = model.n_max - 2
    n_build = limit if n_build is None else n_build
    if not 0 <= n_build <= limit:
        raise ValueError(f"n_build must lie in 0..{limit} (n_max - 2) to stay in the trusted interior")
    vac = find_vacuum(registry).state if vacuum is None else vacuum
    g = lambda k: registry[k].matrix
    w = (g("b1+") + 1j * g("b2+")).tocsr()
    Tp, Jm, Sp, b3p = g("T+"), g("J-"), g("S+"), g("b3+")
    basis = FockBasis3D(registry, n_build, vac)
    sp_vac = Sp @ vac
    w_pow = [vac]
    w_pow_s = [sp_vac]
    for _ in range(n_build):
        w_pow.append(w @ w_pow[-1])
        w_pow_s.append(w @ w_pow_s[-1])
    for l in range(n_build + 1):
        heads = {2 * l + 1: w_pow_s[l]}
        if l >= 1:
            heads[2 * l - 1] = w_pow[l] + b3p @ w_pow_s[l - 1]
        for j2, hw in heads.items():
            v = hw
            for j3x2 in range(j2, -j2 - 1, -2):
                if j3x2 != j2:
                    v = Jm @ v
                u = v
                for n in range(l, n_build + 1):
                    if n > l:
                        u = Tp @ u
                    basis.vectors[FockLabel3D(n, l, j2, j3x2)] = u
    if check:
        rep = basis_invariants(basis)
        if not rep.passed:
            bad = ", ".join(c.id for c in rep.failures()[:5])
            raise RuntimeError(f"basis construction failed its invariants: {bad}")
    return basis


def _rel(x, scale):
    return float(np.linalg.norm(x) / max(scale, 1e-300))


def basis_invariants(basis: FockBasis3D, tol=1e-9, rank_tol=1e-8) -> VerificationReport:
    """Eigenvalue labels, linear independence and per-n completeness."""
    reg = basis.registry
    g = lambda k: reg[k].matrix
    N, L2, J2, J3 = g("N"), g("L^2"), g("J^2"), g("J3")
    report = VerificationReport("fock-basis-invariants", tol)
    worst = {k: 0.0 for k in ("N", "L^2", "J^2", "J3")}
    for lab, v in basis.vectors.items():
        nv = np.linalg.norm(v)
        for key, op, lam in (("N", N, lab.n), ("L^2", L2, lab.l * (lab.l + 1)),
                             ("J^2", J2, lab.j * (lab.j + 1)), ("J3", J3, lab.j3)):
            worst[key] = max(worst[key], _rel(op @ v - lam * v, nv))
    for k, res in worst.items():
        report.add(f"eigen:{k}", res, note="relative residual |(X - lambda) v| / |v|")
    labels = basis.labels
    A = basis.stacked(labels)
    A = A / np.linalg.norm(A, axis=0)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    report.add("independence", float(len(labels) - rank), passed=rank == len(labels),
               note=f"rank {rank} of {len(labels)}; smallest singular value {s[-1]:.3e}")
    ndiag = np.real(N.diagonal())
    for n in range(basis.n_build + 1):
        count = sum(1 for l in labels if l.n == n)
        space = int(np.sum(np.abs(ndiag - n) < 1e-9))
        report.add(f"completeness:n={n}", float(abs(count - space)), passed=count == space,
                   note=f"{count} labels vs N-eigenspace dimension {space}")
    return report


# ---------------------------------------------------------------- actions

def _action_check(report, cid, lhs, rhs, scale, tol):
    res = float(np.max(np.abs(lhs - rhs))) / max(scale, 1.0)
    report.add(cid, res, passed=res <= tol)


def verify_actions(basis: FockBasis3D, tol=1e-8, n_limit=None) -> VerificationReport:
    """Check the five ladder actions on every label whose image is built.

    Residuals are max-abs differences divided by the larger max-abs entry of
    the two sides (the vectors are unnormalised).
    """
    reg = basis.registry
    g = lambda k: reg[k].matrix
    Sp, Sm, Sc, Bp, Bm = g("S+s"), g("S-s"), g("Sc"), g("B+s"), g("B-s")
    top = basis.n_build if n_limit is None else min(n_limit, basis.n_build)
    report = VerificationReport("fock-actions", tol, meta={"n_build": basis.n_build, "n_limit": top})
    zero = np.zeros_like(basis.vacuum)

    def scale(*vs):
        return max(float(np.max(np.abs(v))) for v in vs)

    def vec(n, l, j2, j3x2):
        lab = safe_label(n, l, j2, j3x2)
        return None if lab is None else basis.vectors.get(lab)

    for lab in basis.labels:
        n, l, j2, m2 = lab.n, lab.l, lab.j2, lab.j3x2
        if n > top:
            continue
        v = basis.vectors[lab]
        even = (n - l) % 2 == 0
        sign = 1 if even else -1
        # (i) S+s
        if n + 1 <= basis.n_build:
            rhs = vec(n + 1, l, j2, m2) if even else zero
            _action_check(report, f"i:{lab}", Sp @ v, rhs, scale(v, rhs), tol)
        # (ii) S-s
        rhs = zero if even else vec(n - 1, l, j2, m2)
        _action_check(report, f"ii:{lab}", Sm @ v, rhs, scale(v, rhs), tol)
        # (iii) Sc
        _action_check(report, f"iii:{lab}", Sc @ v, -0.5 * sign * v, scale(v), tol)
        # (iv) B+s
        if n + 1 <= basis.n_build:
            l_new = l + 1 if lab.upper_branch else l - 1
            rhs = vec(n + 1, l_new, j2, m2)
            _action_check(report, f"iv:{lab}", Bp @ v, rhs, scale(v, rhs), tol)
        # (v) B-s
        if lab.upper_branch:
            coef, target = n - lab.j + 0.5 * sign, vec(n - 1, l + 1, j2, m2)
        else:
            coef, target = n + lab.j + 1 + 0.5 * sign, vec(n - 1, l - 1, j2, m2)
        lhs = Bm @ v
        if target is None:
            if abs(coef) > 0:
                report.add(f"v:{lab}", float("inf"), passed=False,
                           note=f"nonzero coefficient {coef} but the image label does not exist")
                continue
            rhs = zero
        else:
            rhs = coef * target
        _action_check(report, f"v:{lab}", lhs, rhs, scale(v, rhs), tol)
    return report


# ------------------------------------------------------------ injectivity

def injectivity_report(registry, depth=3, n_random=20, seed=0, tol=1e-10, rank_tol=1e-8) -> VerificationReport:
    """Rank of T+ on the interior, commutants and positivity checks."""
    model = registry.model
    g = lambda k: registry[k].matrix
    idx = np.flatnonzero(interior_mask(depth, 3, model.cutoff, model.spinor_dim))
    report = VerificationReport("injectivity", tol, meta={"depth": depth, "seed": seed, "n_random": n_random})
    Tcols = g("T+")[:, idx].toarray()
    s = np.linalg.svd(Tcols, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s[0]))
    report.add("rank(T+ P)", float(len(idx) - rank), passed=rank == len(idx),
               note=f"rank {rank}, interior dimension {len(idx)}, smallest singular value {s[-1]:.3e}")

    def interior(m):
        return max_abs(m[idx][:, idx])

    def comm(x, y):
        return x @ y - y @ x

    report.add("[L^2,B+s^2]", interior(comm(g("L^2"), g("B+s^2"))), depth=depth)
    report.add("[L^2,S-s]", interior(comm(g("L^2"), g("S-s"))), depth=depth)
    report.add("[L^2,S+s]", interior(comm(g("L^2"), g("S+s"))), depth=depth)
    for i in (1, 2, 3):
        report.add(f"[J{i},B+s]", interior(comm(g(f"J{i}"), g("B+s"))), depth=depth)
        report.add(f"[J{i},S+s]", interior(comm(g(f"J{i}"), g("S+s"))), depth=depth)
    rng = np.random.default_rng(seed)
    A = g("N-Sc") + g("Id")
    BB = g("B-s^2") @ g("B+s^2")
    vals, vals_bb = [], []
    for _ in range(n_random):
        psi = np.zeros(model.size, dtype=complex)
        psi[idx] = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
        psi /= np.linalg.norm(psi)
        vals.append(float(np.real(np.vdot(psi, A @ psi))))
        vals_bb.append(float(np.real(np.vdot(psi, BB @ psi))))
    report.add("<N-Sc+Id> > 0", max(0.0, -min(vals)), passed=min(vals) > 0, note=f"min {min(vals):.6g}")
    report.add("<B-^2 B+^2> > 0", max(0.0, -min(vals_bb)), passed=min(vals_bb) > 0, note=f"min {min(vals_bb):.6g}")
    return report


def t_power_brackets(registry, k_max=4, tol=1e-10) -> VerificationReport:
    """Colour bracket of S+s with (T+)^k: zero for even k, (T+)^(k+1) for odd k.

    (T+)^k has degree k*10, so the bracket is a commutator for even k and an
    anticommutator for odd k.  The interior depth is 2(k+1).
    """
    model = registry.model
    Sp, Tp = registry["S+s"].matrix, registry["T+"].matrix
    report = VerificationReport("t-power-brackets", tol)
    powers = [sparse.identity(model.size, dtype=complex, format="csr")]
    for _ in range(k_max + 1):
        powers.append((Tp @ powers[-1]).tocsr())
    for k in range(1, k_max + 1):
        depth = 2 * (k + 1)
        if depth > model.n_max:
            raise ValueError(f"cutoff n_max={model.n_max} is too small for interior depth {depth}; increase --n-max")
        eps = 1 if k % 2 == 0 else -1
        br = Sp @ powers[k] - eps * (powers[k] @ Sp)
        rhs = powers[k + 1] if k % 2 else 0 * powers[k]
        idx = np.flatnonzero(interior_mask(depth, 3, model.cutoff, model.spinor_dim))
        report.add(f"<<S+s,(T+)^{k}>>", max_abs((br - rhs)[idx][:, idx]), depth=depth)
    return report


# ----------------------------------------------------------------- export

def export_jsonl(basis: FockBasis3D, fp, threshold=1e-14):
    """One JSON object per label with its sparse coefficients."""
    for lab in basis.labels:
        v = basis.vectors[lab]
        nz = np.flatnonzero(np.abs(v) > threshold)
        rec = {
            "n": lab.n, "l": lab.l, "j2": lab.j2, "j3x2": lab.j3x2,
            "norm": float(np.linalg.norm(v)),
            "coefficients": [[int(i), float(v[i].real), float(v[i].imag)] for i in nz],
        }
        fp.write(json.dumps(rec) + "\n")


def shell_occupation(model):
    return total_occupation(model.dim, model.cutoff, model.spinor_dim)
