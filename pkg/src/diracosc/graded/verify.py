"""Checking algebra presentations against an operator registry.

Every residual is the largest absolute matrix entry of ``P (lhs - rhs) P``.
``P`` is the interior projector whose depth is the number of raising steps
the expression can take (the summed ``reach`` of its factors).  On that
interior the truncated matrices agree with the untruncated operators, so the
identities hold to rounding error.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from ..fock import interior_mask
from ..report import VerificationReport
from .core import add_degrees, commutation_factor, format_degree, max_abs
from .schema import AlgebraSpec, evaluate_coefficient, parse_sexpr

DEFAULT_TOL = 1e-10


@dataclass
class _Value:
    """An evaluated expression: homogeneous parts plus a reach bound."""

    parts: List[Tuple[complex, sparse.csr_matrix, Optional[tuple]]]
    reach: int

    @property
    def matrix(self):
        out = None
        for c, m, _ in self.parts:
            term = m if c == 1 else c * m
            out = term if out is None else out + term
        return out.tocsr()

    @property
    def degree(self):
        degs = {d for _, _, d in self.parts}
        return degs.pop() if len(degs) == 1 else None


class Evaluator:
    """Evaluates s-expressions over one registry using the degrees of one spec."""

    def __init__(self, spec: AlgebraSpec, registry):
        if registry.model.dim != spec.dim:
            raise ValueError(f"{spec.name} needs a {spec.dim}D registry, got {registry.model.dim}D")
        self.spec = spec
        self.registry = registry
        self.degrees = spec.degrees()
        self.splits = spec.split_map()
        self.model = registry.model
        self._cache: Dict[str, _Value] = {}

    def atom(self, label) -> _Value:
        if label in self._cache:
            return self._cache[label]
        if label in self.splits:
            parts, reach = [], 0
            for coef, sub in self.splits[label]:
                c = evaluate_coefficient(coef, self.model.mass, self.model.omega)
                v = self.atom(sub)
                parts.extend((c * pc, pm, pd) for pc, pm, pd in v.parts)
                reach = max(reach, v.reach)
            val = _Value(parts, reach)
        else:
            op = self.registry[label]
            val = _Value([(1, op.matrix, self.degrees.get(label))], op.reach)
        self._cache[label] = val
        return val

    def evaluate(self, tree) -> _Value:
        if isinstance(tree, str):
            return self.atom(tree)
        head, x, y = tree[0], self.evaluate(tree[1]), self.evaluate(tree[2])
        reach = x.reach + y.reach
        if head == "mul":
            deg = _sum_degree(x.degree, y.degree)
            return _Value([(1, (x.matrix @ y.matrix).tocsr(), deg)], reach)
        if head in ("comm", "acomm"):
            sign = 1 if head == "comm" else -1
            xm, ym = x.matrix, y.matrix
            return _Value([(1, (xm @ ym - sign * (ym @ xm)).tocsr(), _sum_degree(x.degree, y.degree))], reach)
        # colour bracket, bilinear over homogeneous parts
        parts = []
        for cx, mx, dx in x.parts:
            for cy, my, dy in y.parts:
                if dx is None or dy is None:
                    raise ValueError(f"colour bracket of a label without a degree in {tree!r}")
                eps = commutation_factor(dx, dy)
                parts.append((cx * cy, (mx @ my - eps * (my @ mx)).tocsr(), add_degrees(dx, dy)))
        return _Value(parts, reach)

    def projected(self, matrix, depth):
        """``P M P`` restricted to the interior block, as a sparse matrix."""
        idx = self.interior(depth)
        return matrix[idx][:, idx]

    def interior(self, depth):
        n_max = self.model.n_max
        if depth > n_max:
            raise ValueError(
                f"cutoff n_max={n_max} is too small for interior depth {depth}; increase --n-max"
            )
        return np.flatnonzero(interior_mask(depth, self.model.dim, self.model.cutoff, self.model.spinor_dim))


def _sum_degree(a, b):
    if a is None or b is None or len(a) != len(b):
        return None
    return add_degrees(a, b)


def check_relations(spec: AlgebraSpec, registry, tol=DEFAULT_TOL, depth=None, literal=False,
                    evaluator=None, report=None) -> VerificationReport:
    """Residual of every relation instance (no closure or type checks)."""
    ev = evaluator or Evaluator(spec, registry)
    report = report or VerificationReport(spec.name, tol)
    m, w = registry.model.mass, registry.model.omega
    for schema in spec.relations:
        for iid, lhs_text, terms in schema.instances(spec.cyclic, literal):
            lhs = ev.evaluate(parse_sexpr(lhs_text))
            diff = lhs.matrix
            need = lhs.reach
            for coef, expr, env in terms:
                c = evaluate_coefficient(coef, m, w, tuple(sorted(env.items())))
                if c == 0:
                    continue
                val = ev.evaluate(parse_sexpr(expr))
                diff = diff - c * val.matrix
                need = max(need, val.reach)
            d = need if depth is None else depth
            if schema.depth is not None:
                d = max(d, schema.depth)
            res = max_abs(ev.projected(diff, d))
            note = ",".join(schema.flags)
            report.add(iid, res, depth=d, raw_residual=max_abs(diff), note=note)
    return report


def check_bracket_types(spec: AlgebraSpec, report=None) -> VerificationReport:
    """Written comm/acomm must match the type the commutation factor predicts."""
    report = report or VerificationReport(spec.name, 0.5)
    degrees = spec.degrees()
    splits = spec.split_map()

    def static(tree):
        if isinstance(tree, str):
            return None if tree in splits else degrees.get(tree)
        return _sum_degree(static(tree[1]), static(tree[2]))

    def walk(tree, out):
        if isinstance(tree, str):
            return
        for sub in tree[1:]:
            walk(sub, out)
        if tree[0] in ("comm", "acomm"):
            dx, dy = static(tree[1]), static(tree[2])
            if dx is not None and dy is not None:
                predicted = "comm" if commutation_factor(dx, dy) == 1 else "acomm"
                out.append((tree, predicted))

    for schema in spec.relations:
        seen = set()
        bad = []
        for _, lhs_text, _ in schema.instances(spec.cyclic):
            found = []
            walk(parse_sexpr(lhs_text), found)
            for tree, predicted in found:
                key = (tree, predicted)
                if key in seen:
                    continue
                seen.add(key)
                if tree[0] != predicted:
                    bad.append(f"{tree[0]} written where degrees give {predicted}: {tree}")
        if seen:
            report.add(f"type:{schema.id}", float(len(bad)), note="; ".join(bad[:3]))
    return report


def check_degree_additivity(spec: AlgebraSpec, report=None) -> VerificationReport:
    report = report or VerificationReport(spec.name, 0.5)
    degrees = spec.degrees()
    for label, a, b in spec.products:
        ok = degrees[label] == add_degrees(degrees[a], degrees[b])
        report.add(f"degree:{label}", 0.0 if ok else 1.0,
                   note=f"{format_degree(degrees[a])}+{format_degree(degrees[b])} vs {format_degree(degrees[label])}")
    return report


def named_pairs(spec: AlgebraSpec):
    """Unordered generator pairs whose bracket some relation states explicitly."""
    gens = set(spec.labels)
    out = set()
    for schema in spec.relations:
        for _, lhs_text, _ in schema.instances(spec.cyclic):
            tree = parse_sexpr(lhs_text)
            if isinstance(tree, tuple) and tree[0] in ("br", "comm", "acomm"):
                if isinstance(tree[1], str) and isinstance(tree[2], str) and tree[1] in gens and tree[2] in gens:
                    out.add(frozenset((tree[1], tree[2])))
    return out


def closure_sweep(spec: AlgebraSpec, registry, tol=DEFAULT_TOL, evaluator=None, report=None) -> VerificationReport:
    """Brackets of generator pairs that no relation names.

    In ``zero`` mode each must vanish; in ``span`` mode each must be a linear
    combination of the generators in the summed degree (least squares on the
    interior block).
    """
    ev = evaluator or Evaluator(spec, registry)
    report = report or VerificationReport(spec.name, tol)
    if spec.closure is None:
        return report
    named = named_pairs(spec)
    degrees = spec.degrees()
    labels = spec.labels
    by_degree: Dict[tuple, List[str]] = {}
    for g in labels:
        by_degree.setdefault(degrees[g], []).append(g)
    cache = {}

    def projected(label, depth):
        if (label, depth) not in cache:
            cache[label, depth] = ev.projected(ev.atom(label).matrix, depth)
        return cache[label, depth]

    for i, a in enumerate(labels):
        for b in labels[i:]:
            if frozenset((a, b)) in named:
                continue
            val = ev.evaluate(("br", a, b))
            depth = val.reach
            block = ev.projected(val.matrix, depth)
            deg = add_degrees(degrees[a], degrees[b])
            cands = by_degree.get(deg, []) if spec.closure == "span" else []
            if cands and block.nnz:
                res, terms = _span_fit(block, [projected(c, depth) for c in cands])
                note = "span: " + " + ".join(f"({k.real:g}{k.imag:+g}j)*{c}"
                                             for c, k in zip(cands, terms) if abs(k) > 1e-9)
            else:
                res, note = max_abs(block), "zero"
            report.add(f"closure:[{a},{b}]", res, depth=depth, note=note)
    return report


def _span_fit(target, basis):
    """Least-squares fit of a sparse matrix by sparse basis matrices (normal equations)."""
    G = np.array([[(u.conj().multiply(v)).sum() for v in basis] for u in basis])
    rhs = np.array([(u.conj().multiply(target)).sum() for u in basis])
    coef = np.linalg.lstsq(G, rhs, rcond=None)[0]
    fit = target.copy()
    for c, u in zip(coef, basis):
        fit = fit - c * u
    return max_abs(fit), [complex(np.round(c, 10)) for c in coef]


def verify_algebra(spec: AlgebraSpec, registry, tol=DEFAULT_TOL, depth=None, literal=False,
                   closure=True) -> VerificationReport:
    """Relation table, bracket-type consistency, degree additivity and closure.

    ``literal=True`` checks the right-hand sides exactly as printed where a
    corrected version exists.  ``depth`` overrides the automatic interior depth.
    """
    ev = Evaluator(spec, registry)
    report = VerificationReport(spec.name, tol, meta={
        "dim": spec.dim, "n_max": registry.model.n_max, "mass": registry.model.mass,
        "omega": registry.model.omega, "literal": literal, "closure": spec.closure,
    })
    check_relations(spec, registry, tol, depth, literal, ev, report)
    for c in check_bracket_types(spec).checks + check_degree_additivity(spec).checks:
        report.add(c.id, 0.0 if c.passed else 1.0, passed=c.passed, note=c.note)
    if closure:
        closure_sweep(spec, registry, tol, ev, report)
    return report


def colour_jacobi_sweep(spec: AlgebraSpec, registry, tol=DEFAULT_TOL, depth=None) -> VerificationReport:
    """Colour Jacobi identity over generator triples.

    The epsilon-weighted cyclic sum is unchanged by cyclic permutations and
    only picks up a sign under a transposition, so one representative per
    unordered triple (with repetition) covers every ordered triple.
    """
    ev = Evaluator(spec, registry)
    labels = spec.labels
    degrees = spec.degrees()
    reach = {g: ev.atom(g).reach for g in labels}
    if depth is None:
        depth = max(3, 3 * max(reach.values(), default=0))
    depth = min(depth, registry.model.n_max)
    idx = ev.interior(depth)
    rows = {g: ev.atom(g).matrix[idx] for g in labels}
    cols = {g: ev.atom(g).matrix[:, idx] for g in labels}
    pair_rows, pair_cols = {}, {}

    def bracket_blocks(y, z):
        key = (y, z)
        if key not in pair_rows:
            full = ev.evaluate(("br", y, z)).matrix
            pair_rows[key], pair_cols[key] = full[idx], full[:, idx]
        return pair_rows[key], pair_cols[key]

    def outer(x, y, z):
        # P [[x, [y, z]]] P using only interior rows/columns
        br_r, br_c = bracket_blocks(y, z)
        eps = commutation_factor(degrees[x], add_degrees(degrees[y], degrees[z]))
        return rows[x] @ br_c - eps * (br_r @ cols[x])

    report = VerificationReport(f"jacobi:{spec.name}", tol, meta={
        "depth": depth, "generators": len(labels), "triples": 0, "ordered_triples_covered": len(labels) ** 3})
    count = 0
    for x, y, z in itertools.combinations_with_replacement(labels, 3):
        dx, dy, dz = degrees[x], degrees[y], degrees[z]
        total = (commutation_factor(dz, dx) * outer(x, y, z)
                 + commutation_factor(dx, dy) * outer(y, z, x)
                 + commutation_factor(dy, dz) * outer(z, x, y))
        report.add(f"jacobi:({x},{y},{z})", max_abs(total), depth=depth)
        count += 1
    report.meta["triples"] = count
    return report


def vectorised_rank(matrices, depth, evaluator: Evaluator, rel_tol=1e-8) -> int:
    """Numerical rank of interior-restricted operators stacked as vectors."""
    vecs = np.array([evaluator.projected(m, depth).toarray().ravel() for m in matrices])
    s = np.linalg.svd(vecs, compute_uv=False)
    return int(np.sum(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0


def nested_commutator_sequence(registry, length=5):
    """x1 = B-s, then alternately x -> [{B+s,S-s}, x] and x -> [{B-s,S+s}, x]."""
    bm, bp = registry["B-s"].matrix, registry["B+s"].matrix
    sm, sp = registry["S-s"].matrix, registry["S+s"].matrix
    steps = [(bp @ sm + sm @ bp).tocsr(), (bm @ sp + sp @ bm).tocsr()]
    seq = [bm]
    for k in range(1, length):
        y = steps[(k - 1) % 2]
        x = seq[-1]
        seq.append((y @ x - x @ y).tocsr())
    return seq


def nested_commutator_rank(registry, length=5, depth=None, rel_tol=1e-8):
    """Numerical rank of the interior-restricted sequence; (rank, depth)."""
    model = registry.model
    if depth is None:
        depth = min(length, model.n_max)
    idx = np.flatnonzero(interior_mask(depth, model.dim, model.cutoff, model.spinor_dim))
    vecs = np.array([m[idx][:, idx].toarray().ravel() for m in nested_commutator_sequence(registry, length)])
    s = np.linalg.svd(vecs, compute_uv=False)
    rank = int(np.sum(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0
    return rank, depth
