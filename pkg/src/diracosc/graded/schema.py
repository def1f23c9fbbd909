"""Declarative relation schemas and algebra presentations.

A relation is written as an s-expression for the left-hand side and a list
of ``(coefficient, expression)`` terms for the right-hand side::

    RelationSchema("HxB", "(br Hsch b{x:s})", (("x*omega", "b{x:s}"),),
                   indices=(("x", SIGNS),))

Bracket heads:

``br``
    colour bracket, type chosen from the degrees;
``comm`` / ``acomm``
    explicit commutator / anticommutator (the notation used in printed tables);
``mul``
    plain product.

Labels may contain ``{...}`` templates that are evaluated on the index values.
``{x:s}`` renders a sign index as ``-``/``+``.  An integer result is wrapped
cyclically into ``1..cyclic`` so ``N_{j+1}`` is well defined.  Right-hand side
terms may use an index that is not bound by the schema; that index is summed
over ``1..cyclic`` (used for the Levi-Civita sums).

Coefficients are sympy expressions in ``m``, ``omega`` and the index names,
with ``delta`` (Kronecker), ``eps`` (Levi-Civita) and ``Abs`` available.
"""

import itertools
import json
import re
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import sympy

from .core import Degree, format_degree, parse_degree

SIGNS = (-1, 1)
BRACKET_HEADS = ("br", "comm", "acomm", "mul")

_TEMPLATE = re.compile(r"\{([^{}]+)\}")


# ---------------------------------------------------------------- s-expressions

def parse_sexpr(text: str):
    """Parse ``(head a (head b c))`` into nested tuples; bare atoms stay strings."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    if not tokens:
        raise ValueError("empty expression")
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unbalanced expression: {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            items = []
            while pos < len(tokens) and tokens[pos] != ")":
                items.append(read())
            if pos >= len(tokens):
                raise ValueError(f"unbalanced expression: {text!r}")
            pos += 1
            if not items or items[0] not in BRACKET_HEADS:
                raise ValueError(f"unknown head in {text!r}; expected one of {BRACKET_HEADS}")
            if len(items) < 3:
                raise ValueError(f"{items[0]} needs two operands in {text!r}")
            return tuple(items)
        if tok == ")":
            raise ValueError(f"unexpected ')' in {text!r}")
        return tok

    tree = read()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return tree


def atoms(tree):
    if isinstance(tree, str):
        return [tree]
    out = []
    for t in tree[1:]:
        out.extend(atoms(t))
    return out


def render(template: str, env: Dict[str, int], cyclic: Optional[int] = None) -> str:
    """Fill ``{expr}`` / ``{expr:s}`` placeholders from ``env``."""

    def sub(match):
        body = match.group(1)
        sign = body.endswith(":s")
        if sign:
            body = body[:-2]
        value = eval(body, {"__builtins__": {}}, dict(env))
        if sign:
            return "-" if value < 0 else "+"
        value = int(value)
        if cyclic:
            value = (value - 1) % cyclic + 1
        return str(value)

    return _TEMPLATE.sub(sub, template)


def free_indices(template: str):
    names = set()
    for body in _TEMPLATE.findall(template):
        body = body[:-2] if body.endswith(":s") else body
        names.update(re.findall(r"[A-Za-z_]\w*", body))
    return names


# ------------------------------------------------------------------ coefficients

_SYMPY_LOCALS = {
    "delta": sympy.KroneckerDelta,
    "eps": sympy.LeviCivita,
    "Abs": sympy.Abs,
    "sqrt": sympy.sqrt,
    "I": sympy.I,
}


@lru_cache(maxsize=4096)
def _compiled(coef: str, names: Tuple[str, ...]):
    syms = sympy.symbols(("m", "omega") + names)
    local = dict(_SYMPY_LOCALS)
    local.update({str(s): s for s in syms})
    expr = sympy.sympify(coef, locals=local)
    return syms, expr


@lru_cache(maxsize=65536)
def evaluate_coefficient(coef: str, mass: float, omega: float, env: Tuple[Tuple[str, int], ...] = ()) -> complex:
    names = tuple(k for k, _ in env)
    syms, expr = _compiled(coef, names)
    values = dict(zip(syms, (mass, omega) + tuple(v for _, v in env)))
    return complex(sympy.N(expr.subs(values)))


# ----------------------------------------------------------------------- schemas

Term = Tuple[str, str]


@dataclass(frozen=True)
class RelationSchema:
    """One (family of) bracket relation(s) ``lhs = sum coef * expr``.

    ``printed`` keeps the right-hand side exactly as the source table states
    it when the verified ``rhs`` had to be corrected; ``flags`` mark entries
    that were expanded, derived, implied or corrected.
    """

    id: str
    lhs: str
    rhs: Tuple[Term, ...] = ()
    indices: Tuple[Tuple[str, Tuple[int, ...]], ...] = ()
    where: str = ""
    printed: Optional[Tuple[Term, ...]] = None
    flags: Tuple[str, ...] = ()
    note: str = ""
    depth: Optional[int] = None

    def __post_init__(self):
        parse_sexpr(self.lhs)
        for terms in (self.rhs, self.printed or ()):
            for coef, expr in terms:
                if not isinstance(coef, str):
                    raise TypeError(f"coefficient must be a string in relation {self.id!r}")
                parse_sexpr(expr)

    def terms(self, literal=False):
        return self.printed if literal and self.printed is not None else self.rhs

    def instances(self, cyclic=None, literal=False):
        """Yield ``(instance_id, lhs_text, [(coef, expr_text, env)])`` for every index value."""
        names = [n for n, _ in self.indices]
        ranges = [vals for _, vals in self.indices]
        for combo in itertools.product(*ranges) if names else [()]:
            env = dict(zip(names, combo))
            if self.where and not eval(self.where, {"__builtins__": {"abs": abs}}, dict(env)):
                continue
            lhs = render(self.lhs, env, cyclic)
            terms = []
            for coef, expr in self.terms(literal):
                extra = sorted((free_indices(expr) | _coef_names(coef)) - set(env) - {"m", "omega"})
                sums = [range(1, (cyclic or 3) + 1)] * len(extra)
                for values in itertools.product(*sums):
                    full = dict(env, **dict(zip(extra, values)))
                    terms.append((coef, render(expr, full, cyclic), full))
            suffix = ",".join(f"{k}={_fmt_index(v, vals)}" for (k, v), vals in zip(env.items(), ranges))
            yield (f"{self.id}[{suffix}]" if suffix else self.id), lhs, terms


def _fmt_index(v, values):
    if set(values) <= set(SIGNS):
        return "-" if v < 0 else "+"
    return str(v)


@lru_cache(maxsize=4096)
def _coef_names_cached(coef):
    expr = sympy.sympify(coef, locals=dict(_SYMPY_LOCALS))
    return frozenset(str(s) for s in expr.free_symbols)


def _coef_names(coef):
    return set(_coef_names_cached(coef))


@dataclass(frozen=True)
class AlgebraSpec:
    """A named presentation: generators with degrees plus relation schemas.

    ``closure`` is ``"zero"`` when every unnamed generator bracket must vanish,
    ``"span"`` when it must land in the span of generators of the summed
    degree, and ``None`` for bare relation sets with no generator basis.
    ``aux`` gives degrees to non-generator labels used inside relations;
    ``splits`` writes an inhomogeneous label as a sum of homogeneous ones.
    ``products`` names generators that are products of two others (checked
    for degree additivity).
    """

    name: str
    dim: int
    grading: int
    generators: Tuple[Tuple[str, str], ...]
    relations: Tuple[RelationSchema, ...]
    closure: Optional[str] = "span"
    aux: Tuple[Tuple[str, str], ...] = ()
    splits: Tuple[Tuple[str, Tuple[Term, ...]], ...] = ()
    products: Tuple[Tuple[str, str, str], ...] = ()
    cyclic: Optional[int] = None
    description: str = ""

    def __post_init__(self):
        if self.closure not in (None, "zero", "span"):
            raise ValueError(f"closure must be None, 'zero' or 'span', got {self.closure!r}")
        labels = [g for g, _ in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate generator labels in {self.name}")
        ids = [r.id for r in self.relations]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate relation ids in {self.name}")
        for label, deg in self.generators + self.aux:
            if len(parse_degree(deg)) != self.grading:
                raise ValueError(f"{label}: degree {deg!r} does not match grading length {self.grading}")

    @property
    def labels(self) -> List[str]:
        return [g for g, _ in self.generators]

    def degrees(self) -> Dict[str, Degree]:
        out = {label: parse_degree(d) for label, d in self.aux}
        out.update({label: parse_degree(d) for label, d in self.generators})
        return out

    def sectors(self) -> Dict[str, List[str]]:
        out: Dict[str, List[str]] = {}
        for label, deg in self.generators:
            out.setdefault(format_degree(parse_degree(deg)), []).append(label)
        return out

    def split_map(self):
        return {label: tuple(parts) for label, parts in self.splits}

    def with_degrees(self, changes: Dict[str, str]) -> "AlgebraSpec":
        """Copy with some generator degrees replaced (used for negative controls)."""
        gens = tuple((g, changes.get(g, d)) for g, d in self.generators)
        return AlgebraSpec(**{**_fields(self), "generators": gens})

    # JSON round trip -----------------------------------------------------
    def to_dict(self):
        d = _fields(self)
        d["generators"] = [list(g) for g in self.generators]
        d["aux"] = [list(a) for a in self.aux]
        d["splits"] = [[label, [list(t) for t in parts]] for label, parts in self.splits]
        d["products"] = [list(p) for p in self.products]
        d["relations"] = [_relation_to_dict(r) for r in self.relations]
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        d["generators"] = tuple(tuple(g) for g in d["generators"])
        d["aux"] = tuple(tuple(a) for a in d.get("aux", ()))
        d["splits"] = tuple((label, tuple(tuple(t) for t in parts)) for label, parts in d.get("splits", ()))
        d["products"] = tuple(tuple(p) for p in d.get("products", ()))
        d["relations"] = tuple(_relation_from_dict(r) for r in d["relations"])
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "AlgebraSpec":
        return cls.from_dict(json.loads(text))


def _fields(spec):
    return {f: getattr(spec, f) for f in spec.__dataclass_fields__}


def _relation_to_dict(r: RelationSchema):
    d = asdict(r)
    d["rhs"] = [list(t) for t in r.rhs]
    d["printed"] = None if r.printed is None else [list(t) for t in r.printed]
    d["indices"] = [[n, list(v)] for n, v in r.indices]
    d["flags"] = list(r.flags)
    return d


def _relation_from_dict(d):
    d = dict(d)
    d["rhs"] = tuple(tuple(t) for t in d.get("rhs", ()))
    if d.get("printed") is not None:
        d["printed"] = tuple(tuple(t) for t in d["printed"])
    d["indices"] = tuple((n, tuple(v)) for n, v in d.get("indices", ()))
    d["flags"] = tuple(d.get("flags", ()))
    return RelationSchema(**d)
