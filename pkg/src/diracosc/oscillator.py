"""Operators of the Dirac oscillator on a truncated Fock space.

Conventions (natural units):

* ``b-_j = -lower_j`` and ``b+_j = -raise_j`` (the position-space ladder
  operators are minus the usual annihilator/creator);
* ``x_j = -(b-_j + b+_j) / sqrt(2 m w)`` and ``p_j = i sqrt(m w / 2) (b-_j - b+_j)``;
* ``H = sum_j alpha_j (p_j - i beta m w x_j) + beta m`` is assembled literally
  from those matrices.

Registry labels are plain ASCII, e.g. ``"b-"``, ``"s+2"``, ``"B-s"``,
``"a+_p"`` (the ``pso_+(3|4)`` copy of ``a+``), ``"B+s^2"``.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict

import numpy as np
from scipy import sparse

from .clifford import CliffordRep, clifford_rep, spin_matrices
from .fock import FockCutoff, build_mode_ops, embed, embed_spinor, total_occupation
from .graded.core import GradedOperator, anticommutator, commutator, parse_degree

DEFAULT_NMAX = {1: 40, 2: 16, 3: 8}


@dataclass(frozen=True)
class OscillatorModel:
    dim: int
    mass: float = 1.0
    omega: float = 1.0
    cutoff: FockCutoff = None
    rep: CliffordRep = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim!r}")
        if not self.mass > 0 or not self.omega > 0:
            raise ValueError("mass and omega must be positive")
        cutoff = self.cutoff
        if cutoff is None:
            cutoff = FockCutoff(DEFAULT_NMAX[self.dim])
        elif not isinstance(cutoff, FockCutoff):
            cutoff = FockCutoff(int(cutoff))
        object.__setattr__(self, "cutoff", cutoff)
        if self.rep is None:
            object.__setattr__(self, "rep", clifford_rep(self.dim))
        if self.rep.spatial_dim != self.dim:
            raise ValueError("Clifford representation dimension does not match the model")

    @property
    def n_max(self) -> int:
        return self.cutoff.n_max

    @property
    def spinor_dim(self) -> int:
        return self.rep.rep_dim

    @property
    def size(self) -> int:
        return self.spinor_dim * self.cutoff.levels ** self.dim

    @property
    def gap(self) -> float:
        """sqrt(2 m w), the ubiquitous ladder coefficient."""
        return float(np.sqrt(2 * self.mass * self.omega))

    def total_occupation(self):
        return total_occupation(self.dim, self.cutoff, self.spinor_dim)


class OperatorRegistry:
    """Immutable label -> GradedOperator map for one model."""

    def __init__(self, model, ops):
        self.model = model
        self._ops = MappingProxyType(dict(ops))
        sizes = {op.shape for op in self._ops.values()}
        if len(sizes) > 1:
            raise ValueError(f"registry operators disagree on shape: {sizes}")

    def __getitem__(self, label) -> GradedOperator:
        try:
            return self._ops[label]
        except KeyError:
            raise KeyError(f"no operator labelled {label!r} in the {self.model.dim}D registry") from None

    def __contains__(self, label):
        return label in self._ops

    def __iter__(self):
        return iter(self._ops)

    def __len__(self):
        return len(self._ops)

    def labels(self):
        return list(self._ops)

    def items(self):
        return self._ops.items()

    def get(self, label, default=None):
        return self._ops.get(label, default)

    def merged(self, extra: Dict[str, GradedOperator]) -> "OperatorRegistry":
        ops = dict(self._ops)
        for k, v in extra.items():
            if k in ops:
                raise ValueError(f"duplicate registry label {k!r}")
            ops[k] = v
        return OperatorRegistry(self.model, ops)


class _Builder:
    def __init__(self, model):
        self.model = model
        self.ops = {}

    def put(self, label, op, degree=None):
        if label in self.ops:
            raise ValueError(f"duplicate registry label {label!r}")
        deg = None if degree is None else parse_degree(degree)
        self.ops[label] = GradedOperator(label, op.matrix.tocsr(), deg, op.reach)
        return self.ops[label]

    def __getitem__(self, label):
        return self.ops[label]


def _op(matrix, reach=0, label="?"):
    return GradedOperator(label, sparse.csr_matrix(matrix), None, reach)


def basic_operators(model: OscillatorModel):
    """Identity, Clifford generators, b-/b+ and x/p for every mode."""
    d, cut, sd = model.dim, model.cutoff, model.spinor_dim
    m, w = model.mass, model.omega
    modes = build_mode_ops(cut)
    ops = {"Id": _op(sparse.identity(model.size, dtype=complex, format="csr"), 0, "Id")}
    ops["beta"] = _op(embed_spinor(model.rep.beta, d, cut), 0, "beta")
    for j, a in enumerate(model.rep.alphas, start=1):
        ops[f"alpha{j}"] = _op(embed_spinor(a, d, cut), 0, f"alpha{j}")
    for j in range(1, d + 1):
        bm = _op(-embed(modes.lower, j, d, cut, sd), 0)
        bp = _op(-embed(modes.raise_, j, d, cut, sd), 1)
        ops[f"b{j}-"], ops[f"b{j}+"] = bm, bp
        ops[f"x{j}"] = -(bm + bp) / np.sqrt(2 * m * w)
        ops[f"p{j}"] = 1j * np.sqrt(m * w / 2) * (bm - bp)
    return ops


def hamiltonian_matrix(model: OscillatorModel, ops=None) -> GradedOperator:
    ops = ops or basic_operators(model)
    m, w = model.mass, model.omega
    beta = ops["beta"]
    H = m * beta
    for j in range(1, model.dim + 1):
        H = H + ops[f"alpha{j}"] @ (ops[f"p{j}"] - 1j * m * w * (beta @ ops[f"x{j}"]))
    return H.relabel("H", None)


def build_hamiltonian(model: OscillatorModel) -> GradedOperator:
    H = hamiltonian_matrix(model)
    herm = abs(H.matrix - H.matrix.conj().T)
    if herm.nnz and herm.max() > 1e-12:
        raise RuntimeError("assembled Hamiltonian is not Hermitian")
    return H


def _common(b: _Builder, raw):
    """Entries shared by every dimension: Id, beta, alphas, b/s ladders, H, H^2."""
    m, w, d = b.model.mass, b.model.omega, b.model.dim
    beta = raw["beta"]
    b.put("Id", raw["Id"])
    b.put("beta", beta)
    for j in range(1, d + 1):
        b.put(f"alpha{j}", raw[f"alpha{j}"])
    H = hamiltonian_matrix(b.model, raw)
    b.put("H", H)
    b.put("H^2", H @ H)
    b.put("Sc", -0.5 * beta)
    nb = None
    for j in range(1, d + 1):
        al = raw[f"alpha{j}"]
        sfx = "" if d == 1 else str(j)
        b.put(f"b{sfx}-", raw[f"b{j}-"])
        b.put(f"b{sfx}+", raw[f"b{j}+"])
        b.put(f"s{sfx}-", -0.5j * (beta @ al + al))
        b.put(f"s{sfx}+", -0.5j * (beta @ al - al))
        term = raw[f"b{j}+"] @ raw[f"b{j}-"]
        nb = term if nb is None else nb + term
    # normal-ordered: exact wherever the image stays below the cutoff
    b.put("Hsch", w * (nb + (d / 2) * raw["Id"]))
    return H


def _l_component(raw, k, l):
    """-i (b+_k b-_l - b+_l b-_k) = x_k p_l - x_l p_k in normal order."""
    return -1j * (raw[f"b{k}+"] @ raw[f"b{l}-"] - raw[f"b{l}+"] @ raw[f"b{k}-"])


def build_ladders_1d(model: OscillatorModel) -> OperatorRegistry:
    if model.dim != 1:
        raise ValueError("build_ladders_1d needs a 1D model")
    raw = basic_operators(model)
    b = _Builder(model)
    H = _common(b, raw)
    m = model.mass
    for lab, deg in (("b-", "10"), ("b+", "10"), ("s-", "11"), ("s+", "11"), ("Hsch", "00"), ("Sc", "00"), ("Id", "00")):
        b.ops[lab] = b.ops[lab].relabel(lab, deg)
    b.put("b-^2", b["b-"] @ b["b-"], "00")
    b.put("b+^2", b["b+"] @ b["b+"], "00")
    for x in "-+":
        for y in "-+":
            b.put(f"b{x}s{y}", b[f"b{x}"] @ b[f"s{y}"], "01")
    b.put("H0", H - m * raw["beta"], "01")
    b.put("x", raw["x1"])
    b.put("p", raw["p1"])
    return OperatorRegistry(model, b.ops)


def build_ladders_2d(model: OscillatorModel) -> OperatorRegistry:
    if model.dim != 2:
        raise ValueError("build_ladders_2d needs a 2D model")
    raw = basic_operators(model)
    b = _Builder(model)
    H = _common(b, raw)
    beta, Id = raw["beta"], raw["Id"]
    r2 = np.sqrt(2.0)
    for j in (1, 2):
        k = 3 - j
        rot = beta @ raw[f"alpha{j}"] @ raw[f"alpha{k}"]
        b.put(f"a{j}-", (raw[f"b{j}-"] + rot @ raw[f"b{k}-"]) / r2)
        b.put(f"a{j}+", (raw[f"b{j}+"] - rot @ raw[f"b{k}+"]) / r2)
        b.put(f"c{j}-", (raw[f"b{j}-"] - rot @ raw[f"b{k}-"]) / r2)
        b.put(f"c{j}+", (raw[f"b{j}+"] + rot @ raw[f"b{k}+"]) / r2)
    (S0,) = spin_matrices(model.rep)
    S0 = _op(embed_spinor(S0, 2, model.cutoff))
    L0 = _l_component(raw, 1, 2)
    b.put("S0", S0)
    b.put("L0", L0)
    b.put("betaS0", beta @ S0)
    b.put("J", L0 + S0)
    N = 0.5 * (b["s1+"] @ b["s1-"] + b["s2+"] @ b["s2-"])
    for j in (1, 2):
        N = N + b[f"b{j}+"] @ b[f"b{j}-"]
    b.put("N", N)
    b.put("CLS", -2.0 * (beta @ L0 @ S0) - 0.5 * beta)
    # chiral copies living on the +-1/2 eigenspaces of beta S0
    for tag, sg in (("p", 1), ("m", -1)):
        for z, zs in (("-", -1), ("+", 1)):
            b.put(f"s{z}_{tag}", 0.5 * b[f"s1{z}"] - sg * zs * 0.5j * b[f"s2{z}"], "11")
            b.put(f"a{z}_{tag}", 0.5 * b[f"a1{z}"] - sg * zs * 0.5j * b[f"a2{z}"], "10")
            b.put(f"c{z}_{tag}", 0.5 * b[f"c1{z}"] + sg * zs * 0.5j * b[f"c2{z}"], "10")
        hs = b["Hsch"]
        b.put(f"H_{tag}", 0.5 * hs + sg * (hs @ beta @ S0), "00")
        b.put(f"CLS_{tag}", 0.5 * b["CLS"] + 0.25 * beta - sg * 0.5 * L0, "00")
        b.put(f"Sc_{tag}", -0.25 * beta - sg * 0.5 * S0, "00")
        for x in "-+":
            for y in "-+":
                b.put(f"a{x}s{y}_{tag}", b[f"a{x}_{tag}"] @ b[f"s{y}_{tag}"], "01")
                b.put(f"c{x}s{y}_{tag}", b[f"c{x}_{tag}"] @ b[f"s{y}_{tag}"], "01")
                b.put(f"a{x}c{y}_{tag}", b[f"a{x}_{tag}"] @ b[f"c{y}_{tag}"], "00")
            b.put(f"a{x}^2_{tag}", b[f"a{x}_{tag}"] @ b[f"a{x}_{tag}"], "00")
            b.put(f"c{x}^2_{tag}", b[f"c{x}_{tag}"] @ b[f"c{x}_{tag}"], "00")
        b.put(f"P_{tag}", 0.5 * Id + sg * (beta @ S0))
    return OperatorRegistry(model, b.ops)


def build_ladders_3d(model: OscillatorModel) -> OperatorRegistry:
    if model.dim != 3:
        raise ValueError("build_ladders_3d needs a 3D model")
    raw = basic_operators(model)
    b = _Builder(model)
    H = _common(b, raw)
    m, w = model.mass, model.omega
    beta, Id = raw["beta"], raw["Id"]
    S = [_op(embed_spinor(s, 3, model.cutoff)) for s in spin_matrices(model.rep)]
    L = [_l_component(raw, (j + 1) % 3 + 1, (j + 2) % 3 + 1) for j in range(3)]
    for j in range(3):
        b.put(f"S{j + 1}", S[j])
        b.put(f"L{j + 1}", L[j])
        b.put(f"J{j + 1}", L[j] + S[j])
    for name, vec in (("S", S), ("L", L)):
        b.put(f"{name}+", vec[0] + 1j * vec[1])
        b.put(f"{name}-", vec[0] - 1j * vec[1])
    b.put("J+", b["L+"] + b["S+"])
    b.put("J-", b["L-"] + b["S-"])
    J = [b[f"J{j}"] for j in (1, 2, 3)]
    b.put("L^2", sum((l @ l for l in L[1:]), L[0] @ L[0]))
    b.put("J^2", sum((x @ x for x in J[1:]), J[0] @ J[0]))
    b.put("S^2", sum((x @ x for x in S[1:]), S[0] @ S[0]))
    LS = sum((L[j] @ S[j] for j in (1, 2)), L[0] @ S[0])
    b.put("LdotS", LS)
    b.put("CLS", -2.0 * (beta @ LS) - beta)
    bm = [b[f"b{j}-"] for j in (1, 2, 3)]
    bp = [b[f"b{j}+"] for j in (1, 2, 3)]
    sm = [b[f"s{j}-"] for j in (1, 2, 3)]
    sp = [b[f"s{j}+"] for j in (1, 2, 3)]
    b.put("N", sum((bp[j] @ bm[j] for j in (1, 2)), bp[0] @ bm[0])
          + (1 / 3) * sum((sp[j] @ sm[j] for j in (1, 2)), sp[0] @ sm[0]))
    Bm = 2.0 * sum((bm[j] @ S[j] for j in (1, 2)), bm[0] @ S[0])
    Bp = 2.0 * sum((bp[j] @ S[j] for j in (1, 2)), bp[0] @ S[0])
    Sm = (2 / 3) * sum((sm[j] @ S[j] for j in (1, 2)), sm[0] @ S[0])
    Sp = (2 / 3) * sum((sp[j] @ S[j] for j in (1, 2)), sp[0] @ S[0])
    b.put("B-s", Bm, "01")
    b.put("B+s", Bp, "01")
    b.put("S-s", Sm, "10")
    b.put("S+s", Sp, "10")
    b.put("B-s^2", Bm @ Bm, "00")
    b.put("B+s^2", Bp @ Bp, "00")
    b.put("T+", Bp @ Bp @ Sm + Sp, "10")
    b.put("T-", Bm @ Bm @ Sp + Sm, "10")
    N = b["N"]
    b.put("N-Sc", N - b["Sc"], "00")
    b.put("N+Id", N + Id)
    b.put("H^2_under", 2 * m * w * (N - b["CLS"] + Id) + m * m * Id)
    b.put("H0", H - m * beta)
    # coordinate components for the Z_2^3-graded algebra containing H
    sq = np.sqrt(2 * m * w)
    Hj = []
    for j in range(3):
        Hj.append(b.put(f"H_{j + 1}", sq * (bp[j] @ sm[j] + bm[j] @ sp[j])))
        b.put(f"betaH_{j + 1}", beta @ Hj[j])
        b.put(f"N_{j + 1}", bp[j] @ bm[j] + sp[j] @ sm[j])
        b.put(f"B-s_{j + 1}", 2.0 * (bm[j] @ S[j]))
        b.put(f"B+s_{j + 1}", 2.0 * (bp[j] @ S[j]))
        b.put(f"LS_{j + 1}", L[j] @ S[j])
    for j in range(3):
        k, l = (j + 1) % 3, (j + 2) % 3
        b.put(f"HxH_{j + 1}", commutator(Hj[k], Hj[l]) / (4 * m * w))
    return OperatorRegistry(model, b.ops)


def excitation_number(source) -> np.ndarray:
    """``K`` per basis state for a model or registry: total occupation plus 1 where beta = -1.

    H is block diagonal in K.
    """
    model = getattr(source, "model", source)
    beta = np.real(embed_spinor(model.rep.beta, model.dim, model.cutoff).diagonal())
    return total_occupation(model.dim, model.cutoff, model.spinor_dim) + (beta < 0).astype(int)


def build_registry(model: OscillatorModel) -> OperatorRegistry:
    return {1: build_ladders_1d, 2: build_ladders_2d, 3: build_ladders_3d}[model.dim](model)
