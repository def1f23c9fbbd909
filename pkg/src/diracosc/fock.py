"""Truncated bosonic Fock spaces.

Product-space ordering is ``spinor (x) mode_1 (x) ... (x) mode_d`` with the
spinor index varying slowest.  Every mode is hard-truncated at ``n_max``:
``raise |n_max> = 0``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse


@dataclass(frozen=True)
class FockCutoff:
    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValueError(f"n_max must be an integer >= 1, got {self.n_max!r}")

    @property
    def levels(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class ModeOps:
    lower: sparse.csr_matrix
    raise_: sparse.csr_matrix
    number: sparse.csr_matrix


def _as_cutoff(cutoff):
    return cutoff if isinstance(cutoff, FockCutoff) else FockCutoff(int(cutoff))


def build_mode_ops(cutoff) -> ModeOps:
    cutoff = _as_cutoff(cutoff)
    k = np.arange(1, cutoff.levels)
    lower = sparse.diags(np.sqrt(k).astype(complex), 1, format="csr")
    number = sparse.diags(np.arange(cutoff.levels).astype(complex), 0, format="csr")
    return ModeOps(lower, lower.conj().T.tocsr(), number)


def space_dim(d, cutoff, spinor_dim):
    return spinor_dim * _as_cutoff(cutoff).levels ** d


def embed(op, mode, d, cutoff, spinor_dim):
    """Place a single-mode operator on ``mode`` (1-based) of the full space."""
    cutoff = _as_cutoff(cutoff)
    if not 1 <= mode <= d:
        raise ValueError(f"mode must lie in 1..{d}, got {mode}")
    factors = [sparse.identity(spinor_dim, dtype=complex, format="csr")]
    for k in range(1, d + 1):
        factors.append(sparse.csr_matrix(op) if k == mode else sparse.identity(cutoff.levels, dtype=complex, format="csr"))
    out = factors[0]
    for f in factors[1:]:
        out = sparse.kron(out, f, format="csr")
    return out


def embed_spinor(op, d, cutoff):
    """Spinor matrix tensored with the identity on all ``d`` modes."""
    cutoff = _as_cutoff(cutoff)
    eye = sparse.identity(cutoff.levels ** d, dtype=complex, format="csr")
    return sparse.kron(sparse.csr_matrix(np.asarray(op, dtype=complex)), eye, format="csr")


@lru_cache(maxsize=64)
def occupations(d, n_max, spinor_dim):
    """Per-basis-state occupation numbers, shape ``(dim, d)``."""
    grids = np.indices((n_max + 1,) * d).reshape(d, -1).T
    return np.tile(grids, (spinor_dim, 1))


def total_occupation(d, cutoff, spinor_dim):
    cutoff = _as_cutoff(cutoff)
    return occupations(d, cutoff.n_max, spinor_dim).sum(axis=1)


def interior_mask(depth, d, cutoff, spinor_dim):
    cutoff = _as_cutoff(cutoff)
    if not 0 <= depth <= cutoff.n_max:
        raise ValueError(f"depth must lie in 0..{cutoff.n_max}, got {depth}")
    return total_occupation(d, cutoff, spinor_dim) <= cutoff.n_max - depth


def interior_projector(depth, d, cutoff, spinor_dim):
    """Diagonal 0/1 projector onto states with total occupation <= n_max - depth."""
    mask = interior_mask(depth, d, cutoff, spinor_dim)
    return sparse.diags(mask.astype(complex), 0, format="csr")
