"""Clifford algebra generators (alpha_i, beta) and spin matrices.

Generators are ordered ``(alpha_1, ..., alpha_n, beta)`` and normalised so
that ``{g_j, g_k} = 2 delta_jk Id``.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .report import VerificationReport

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
ID2 = np.eye(2, dtype=complex)
ZERO2 = np.zeros((2, 2), dtype=complex)

FLAVORS = ("dirac4", "minimal")


@dataclass(frozen=True)
class CliffordRep:
    spatial_dim: int
    generators: Tuple[np.ndarray, ...]
    flavor: str = "dirac4"

    @property
    def rep_dim(self) -> int:
        return self.generators[0].shape[0]

    @property
    def alphas(self) -> Tuple[np.ndarray, ...]:
        return self.generators[:-1]

    @property
    def beta(self) -> np.ndarray:
        return self.generators[-1]

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.rep_dim, dtype=complex)


def _check_dim(spatial_dim):
    if spatial_dim not in (1, 2, 3):
        raise ValueError(f"spatial_dim must be 1, 2 or 3, got {spatial_dim!r}")


def dirac_representation(spatial_dim: int) -> CliffordRep:
    """beta = diag(Id, -Id), alpha_i = offdiag(sigma_i, sigma_i)."""
    _check_dim(spatial_dim)
    beta = np.block([[ID2, ZERO2], [ZERO2, -ID2]])
    alphas = [np.block([[ZERO2, s], [s, ZERO2]]) for s in SIGMA[:spatial_dim]]
    return CliffordRep(spatial_dim, tuple(alphas) + (beta,), "dirac4")


def minimal_representation(spatial_dim: int) -> CliffordRep:
    """2x2 cross-check representation: beta = sigma_3, alpha_1 = sigma_1, alpha_2 = sigma_2."""
    _check_dim(spatial_dim)
    if spatial_dim > 2:
        raise ValueError("minimal representation exists only for spatial_dim <= 2")
    return CliffordRep(spatial_dim, tuple(SIGMA[:spatial_dim]) + (SIGMA[2],), "minimal")


def clifford_rep(spatial_dim: int, flavor: str = "dirac4") -> CliffordRep:
    if flavor == "dirac4":
        return dirac_representation(spatial_dim)
    if flavor == "minimal":
        return minimal_representation(spatial_dim)
    raise ValueError(f"unknown Clifford flavor {flavor!r}; expected one of {FLAVORS}")


def spin_matrices(rep: CliffordRep):
    """Spin operators built from products of alphas.

    In 3D returns ``[S_1, S_2, S_3]`` with ``S_i = -(i/2) alpha_j alpha_k``
    (ijk cyclic).  In 2D returns the single matrix ``[S_0]`` with
    ``S_0 = -(i/2) alpha_1 alpha_2``.
    """
    a = rep.alphas
    if rep.spatial_dim == 3:
        return [-0.5j * a[(i + 1) % 3] @ a[(i + 2) % 3] for i in range(3)]
    if rep.spatial_dim == 2:
        return [-0.5j * a[0] @ a[1]]
    raise ValueError("spin matrices need spatial_dim 2 or 3")


def verify_clifford(rep: CliffordRep) -> VerificationReport:
    report = VerificationReport(
        "clifford", tolerance=0.0, meta={"spatial_dim": rep.spatial_dim, "flavor": rep.flavor}
    )
    gens = rep.generators
    eye = rep.identity
    names = [f"alpha{i + 1}" for i in range(len(gens) - 1)] + ["beta"]
    for j in range(len(gens)):
        for k in range(j, len(gens)):
            anti = gens[j] @ gens[k] + gens[k] @ gens[j]
            target = 2 * eye if j == k else 0 * eye
            res = float(np.max(np.abs(anti - target)))
            report.add(f"{{{names[j]},{names[k]}}}", res)
    return report
