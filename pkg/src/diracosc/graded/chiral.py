"""The two chiral copies pso+(3|4) and pso-(3|4) act on complementary halves.

``beta S0`` is diagonal with eigenvalues +-1/2.  Every generator of the
pso-(3|4) copy kills the +1/2 eigenspace and every generator of pso+(3|4)
kills the -1/2 eigenspace.
"""

import numpy as np

from ..fock import interior_mask
from ..report import VerificationReport
from .specs import pso34

HALVES = {"m": 0.5, "p": -0.5}


def chiral_annihilation(registry, n_states=50, seed=0, tol=1e-10, depth=2) -> VerificationReport:
    """Apply each chiral generator to random states of the opposite half.

    One check per ``(copy, generator)``; the residual is the largest
    ``|X psi|_inf`` over ``n_states`` unit random states drawn from the
    interior of the eigenspace that the copy should annihilate.
    """
    model = registry.model
    if model.dim != 2:
        raise ValueError("the chiral split is defined for the 2D oscillator")
    bs0 = np.real(registry["betaS0"].matrix.diagonal())
    inner = interior_mask(depth, 2, model.cutoff, model.spinor_dim)
    rng = np.random.default_rng(seed)
    report = VerificationReport("chiral-annihilation", tol, meta={"n_states": n_states, "seed": seed})
    for tag, half in HALVES.items():
        idx = np.flatnonzero((np.abs(bs0 - half) < 1e-12) & inner)
        psi = np.zeros((model.size, n_states), dtype=complex)
        psi[idx] = rng.normal(size=(len(idx), n_states)) + 1j * rng.normal(size=(len(idx), n_states))
        psi /= np.linalg.norm(psi, axis=0)
        spec = pso34(tag)
        for label in spec.labels:
            out = registry[label].matrix @ psi
            report.add(f"{spec.name}:{label} on betaS0={half:+g}", float(np.max(np.abs(out))))
    return report
