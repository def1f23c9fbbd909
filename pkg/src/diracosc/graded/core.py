"""Degrees over Z_2^k, the commutation factor and the colour bracket."""

from dataclasses import dataclass, replace
from numbers import Number
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

Degree = Tuple[int, ...]


def parse_degree(text) -> Degree:
    """``"01"`` -> ``(0, 1)``; tuples pass through after validation."""
    if isinstance(text, str):
        bits = tuple(int(c) for c in text.strip())
    else:
        bits = tuple(int(c) for c in text)
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError(f"invalid Z_2^k degree {text!r}")
    return bits


def format_degree(deg: Optional[Degree]) -> str:
    return "inhomogeneous" if deg is None else "".join(str(b) for b in deg)


def add_degrees(a: Degree, b: Degree) -> Degree:
    if len(a) != len(b):
        raise ValueError(f"degree length mismatch: {a} vs {b}")
    return tuple((x + y) % 2 for x, y in zip(a, b))


def commutation_factor(a: Degree, b: Degree) -> int:
    """epsilon(a, b) = (-1)^(a . b)."""
    if len(a) != len(b):
        raise ValueError(f"degree length mismatch: {a} vs {b}")
    return -1 if sum(x * y for x, y in zip(a, b)) % 2 else 1


@dataclass(frozen=True, eq=False)
class GradedOperator:
    """A matrix with a Z_2^k degree (``None`` if inhomogeneous).

    ``reach`` bounds how many raising steps the construction can apply to a
    state; a word of operators is free of truncation artifacts on states whose
    total occupation is at most ``n_max`` minus the summed reaches.
    """

    label: str
    matrix: sparse.csr_matrix
    degree: Optional[Degree] = None
    reach: int = 0

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def homogeneous(self) -> bool:
        return self.degree is not None

    def relabel(self, label, degree="keep"):
        if degree == "keep":
            return replace(self, label=label)
        return replace(self, label=label, degree=None if degree is None else parse_degree(degree))

    def dagger(self, label=None):
        return GradedOperator(label or f"({self.label})^+", self.matrix.conj().T.tocsr(), self.degree, self.reach)

    # arithmetic keeps reach and degree bookkeeping honest
    def __matmul__(self, other):
        if isinstance(other, GradedOperator):
            deg = None
            if self.degree is not None and other.degree is not None and len(self.degree) == len(other.degree):
                deg = add_degrees(self.degree, other.degree)
            return GradedOperator(f"{self.label}*{other.label}", (self.matrix @ other.matrix).tocsr(),
                                  deg, self.reach + other.reach)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, GradedOperator):
            deg = self.degree if self.degree == other.degree else None
            return GradedOperator(f"{self.label}+{other.label}", (self.matrix + other.matrix).tocsr(),
                                  deg, max(self.reach, other.reach))
        return NotImplemented

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, c):
        if isinstance(c, Number):
            return GradedOperator(f"{c}*{self.label}", (c * self.matrix).tocsr(), self.degree, self.reach)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / c)

    def __pow__(self, k):
        out = self
        for _ in range(int(k) - 1):
            out = out @ self
        return out


def commutator(x, y):
    return x @ y - y @ x


def anticommutator(x, y):
    return x @ y + y @ x


def colour_bracket(x: GradedOperator, y: GradedOperator):
    """XY - eps(deg X, deg Y) YX for homogeneous operands."""
    if x.degree is None or y.degree is None:
        raise ValueError(
            f"colour bracket needs homogeneous operands; split {x.label if x.degree is None else y.label!r} first"
        )
    eps = commutation_factor(x.degree, y.degree)
    return (x.matrix @ y.matrix - eps * (y.matrix @ x.matrix)).tocsr()


def split_bracket(xparts, yparts):
    """Colour bracket extended bilinearly over homogeneous parts.

    ``xparts``/``yparts`` are sequences of ``(coefficient, GradedOperator)``.
    """
    out = None
    for cx, x in xparts:
        for cy, y in yparts:
            term = (cx * cy) * colour_bracket(x, y)
            out = term if out is None else out + term
    return out.tocsr()


def max_abs(m) -> float:
    if sparse.issparse(m):
        return float(np.max(np.abs(m.data))) if m.nnz else 0.0
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0
