"""Audit of ladder-operator families against (para)statistics relations.

A family is a list of ``(lowering, raising)`` label pairs indexed by ``i``.
Mixed families pair a fermion-type list ``f`` with a boson-type list ``b``.
Each schema reports the largest interior residual over all index and sign
choices; the family *satisfies* the schema when that residual is below
tolerance.  Expected outcomes are recorded only where the source tables state
them; other cells are informational.

The canonical boson relation is checked as ``[b-_i, b+_j] = delta_ij``.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .fock import interior_mask
from .graded.core import max_abs
from .report import VerificationReport

SIGNS = (-1, 1)

FERMION_SCHEMAS = ("fermion", "parafermion", "notparafermion", "notparasac")
BOSON_SCHEMAS = ("boson", "paraboson", "notparaboson", "notparasac")
MIXED_SCHEMAS = ("relative-parafermion", "relative-paraboson")


@dataclass(frozen=True)
class Family:
    name: str
    kind: str  # "fermion", "boson" or "mixed"
    f: Tuple[Tuple[str, str], ...] = ()
    b: Tuple[Tuple[str, str], ...] = ()
    expected: Tuple[Tuple[str, bool], ...] = ()

    @property
    def schemas(self):
        return {"fermion": FERMION_SCHEMAS, "boson": BOSON_SCHEMAS, "mixed": MIXED_SCHEMAS}[self.kind]

    def expectation(self, schema) -> Optional[bool]:
        return dict(self.expected).get(schema)


def _pairs(*labels):
    return tuple((f"{x}-", f"{x}+") for x in labels)


FAMILIES: Dict[int, List[Family]] = {
    1: [
        Family("b", "boson", b=_pairs("b"), expected=(("boson", True), ("paraboson", True))),
        Family("s", "fermion", f=_pairs("s"), expected=(("fermion", True), ("parafermion", True))),
        Family("s|b", "mixed", f=_pairs("s"), b=_pairs("b"), expected=(("relative-paraboson", True),)),
    ],
    2: [
        Family("s", "fermion", f=_pairs("s1", "s2"), expected=(
            ("fermion", False), ("parafermion", False), ("notparafermion", True), ("notparasac", True))),
        Family("a", "boson", b=_pairs("a1", "a2"), expected=(
            ("boson", False), ("paraboson", False), ("notparaboson", True), ("notparasac", True))),
        Family("c", "boson", b=_pairs("c1", "c2"), expected=(
            ("boson", False), ("paraboson", False), ("notparaboson", True), ("notparasac", True))),
        Family("s1|a1,c1", "mixed", f=_pairs("s1"), b=_pairs("a1", "c1"),
               expected=(("relative-paraboson", True),)),
    ],
    3: [
        Family("B", "boson", b=(("B-s", "B+s"),), expected=(("boson", False), ("paraboson", True))),
        Family("S", "fermion", f=(("S-s", "S+s"),), expected=(("fermion", True), ("parafermion", True))),
        Family("S|B", "mixed", f=(("S-s", "S+s"),), b=(("B-s", "B+s"),),
               expected=(("relative-parafermion", False), ("relative-paraboson", False))),
        Family("s", "fermion", f=_pairs("s1", "s2", "s3"), expected=(
            ("fermion", False), ("parafermion", False), ("notparafermion", True))),
    ],
}


def families(dim) -> List[Family]:
    return list(FAMILIES[dim])


def get_family(dim, name) -> Family:
    for fam in FAMILIES[dim]:
        if fam.name == name:
            return fam
    raise KeyError(f"unknown family {name!r} for dim {dim}; choose from {[f.name for f in FAMILIES[dim]]}")


class _Ops:
    """Interior-restricted matrix helper shared by all schema checks."""

    def __init__(self, registry, depth):
        model = registry.model
        self.registry = registry
        self.idx = np.flatnonzero(interior_mask(depth, model.dim, model.cutoff, model.spinor_dim))
        self.Id = registry["Id"].matrix

    def op(self, pairs, i, sign):
        lo, hi = pairs[i]
        return self.registry[hi if sign > 0 else lo].matrix

    def res(self, m):
        return max_abs(m[self.idx][:, self.idx])


def _comm(x, y):
    return x @ y - y @ x


def _acomm(x, y):
    return x @ y + y @ x


def _d(i, j):
    return 1.0 if i == j else 0.0


def _check(ops: _Ops, fam: Family, schema: str) -> float:
    f, b = fam.f, fam.b
    worst = 0.0
    if schema == "fermion":
        for i, j in itertools.product(range(len(f)), repeat=2):
            worst = max(worst, ops.res(_acomm(ops.op(f, i, 1), ops.op(f, j, -1)) - _d(i, j) * ops.Id))
            for s in SIGNS:
                worst = max(worst, ops.res(_acomm(ops.op(f, i, s), ops.op(f, j, s))))
    elif schema == "boson":
        for i, j in itertools.product(range(len(b)), repeat=2):
            worst = max(worst, ops.res(_comm(ops.op(b, i, -1), ops.op(b, j, 1)) - _d(i, j) * ops.Id))
            for s in SIGNS:
                worst = max(worst, ops.res(_comm(ops.op(b, i, s), ops.op(b, j, s))))
    elif schema == "parafermion":
        for (i, j, k), (z, e, x) in itertools.product(itertools.product(range(len(f)), repeat=3),
                                                      itertools.product(SIGNS, repeat=3)):
            lhs = _comm(_comm(ops.op(f, i, z), ops.op(f, j, e)), ops.op(f, k, x))
            rhs = abs(x - e) * _d(j, k) * ops.op(f, i, z) - abs(x - z) * _d(i, k) * ops.op(f, j, e)
            worst = max(worst, ops.res(lhs - rhs))
    elif schema == "paraboson":
        for (i, j, k), (z, e, x) in itertools.product(itertools.product(range(len(b)), repeat=3),
                                                      itertools.product(SIGNS, repeat=3)):
            lhs = _comm(_acomm(ops.op(b, i, z), ops.op(b, j, e)), ops.op(b, k, x))
            rhs = (x - e) * _d(j, k) * ops.op(b, i, z) + (x - z) * _d(i, k) * ops.op(b, j, e)
            worst = max(worst, ops.res(lhs - rhs))
    elif schema in ("notparafermion", "notparaboson"):
        pairs = f if schema == "notparafermion" else b
        inner = _comm if schema == "notparafermion" else _acomm
        for i, j, k in itertools.product(range(len(pairs)), repeat=3):
            lo = [ops.op(pairs, n, -1) for n in range(len(pairs))]
            lhs = _comm(inner(ops.op(pairs, i, 1), lo[j]), lo[k])
            rhs = -2 * _d(i, j) * lo[k] + 2 * _d(j, k) * lo[i] - 2 * _d(k, i) * lo[j]
            worst = max(worst, ops.res(lhs - rhs))
            worst = max(worst, ops.res(_comm(inner(lo[i], lo[j]), lo[k])))
    elif schema == "notparasac":
        pairs, inner = (f, _comm) if fam.kind == "fermion" else (b, _acomm)
        for j, k in itertools.product(range(len(pairs)), repeat=2):
            lhs = _comm(inner(ops.op(pairs, j, 1), ops.op(pairs, j, -1)), ops.op(pairs, k, -1))
            worst = max(worst, ops.res(lhs + 2 * ops.op(pairs, k, -1)))
    elif schema in MIXED_SCHEMAS:
        rel_boson = schema == "relative-paraboson"
        nf, nb = len(f), len(b)
        for z, e, x in itertools.product(SIGNS, repeat=3):
            for i, j, k in itertools.product(range(nf), range(nf), range(nb)):
                lhs = _comm(_comm(ops.op(f, i, z), ops.op(f, j, e)), ops.op(b, k, x))
                worst = max(worst, ops.res(lhs))
            for i, j, k in itertools.product(range(nb), range(nb), range(nf)):
                lhs = _comm(_acomm(ops.op(b, i, z), ops.op(b, j, e)), ops.op(f, k, x))
                worst = max(worst, ops.res(lhs))
            for i, j, k in itertools.product(range(nf), range(nb), range(nf)):
                fb = (_acomm if rel_boson else _comm)(ops.op(f, i, z), ops.op(b, j, e))
                outer = _acomm if rel_boson else _comm
                sign = 1 if rel_boson else -1
                lhs = outer(fb, ops.op(f, k, x))
                worst = max(worst, ops.res(lhs - sign * abs(x - z) * _d(i, k) * ops.op(b, j, e)))
            for i, j, k in itertools.product(range(nf), range(nb), range(nb)):
                fb = (_acomm if rel_boson else _comm)(ops.op(f, i, z), ops.op(b, j, e))
                outer = _comm if rel_boson else _acomm
                lhs = outer(fb, ops.op(b, k, x))
                worst = max(worst, ops.res(lhs - (x - e) * _d(j, k) * ops.op(f, i, z)))
    else:
        raise KeyError(f"unknown schema {schema!r}")
    return worst


def parastatistics_audit(registry, family: Optional[str] = None, tol=1e-10, depth=3) -> VerificationReport:
    """Pass/fail matrix of families against statistics schemas.

    Each check id is ``family:schema``.  A check *passes* when the observed
    outcome equals the expected one (or when no outcome is expected); the
    observed outcome and residual are kept in the note and ``meta['matrix']``.
    """
    dim = registry.model.dim
    fams = [get_family(dim, family)] if family is not None else families(dim)
    ops = _Ops(registry, min(depth, registry.model.n_max))
    report = VerificationReport(f"parastat-audit:{dim}D", tol, meta={"depth": depth, "matrix": {}})
    for fam in fams:
        row = {}
        for schema in fam.schemas:
            res = _check(ops, fam, schema)
            satisfied = res <= tol
            expected = fam.expectation(schema)
            row[schema] = {"satisfied": satisfied, "expected": expected, "residual": res}
            verdict = True if expected is None else satisfied == expected
            note = f"{'satisfied' if satisfied else 'violated'}; expected " + (
                "none" if expected is None else ("satisfied" if expected else "violated"))
            report.add(f"{fam.name}:{schema}", res, passed=verdict, note=note)
        report.meta["matrix"][fam.name] = row
    return report


def format_matrix(report: VerificationReport) -> str:
    """Text table: one row per family, one column per schema."""
    lines = []
    for fam, row in report.meta["matrix"].items():
        cells = []
        for schema, cell in row.items():
            mark = "pass" if cell["satisfied"] else "fail"
            if cell["expected"] is not None:
                mark += "" if cell["satisfied"] == cell["expected"] else " (UNEXPECTED)"
            cells.append(f"{schema}={mark}")
        lines.append(f"{fam:>10}  " + "  ".join(cells))
    return "\n".join(lines)
