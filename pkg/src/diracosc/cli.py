"""Command line entry point: ``python3 -m diracosc <command> [options]``.

Exit status is 0 when every check passes, 1 on a verification failure and 2
on a configuration error.  JSON output is deterministic for a fixed
configuration and carries ``"schema": 1``.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional

from .fockspace3d import (basis_invariants, build_basis, export_jsonl, injectivity_report,
                          t_power_brackets, verify_actions)
from .graded.chiral import chiral_annihilation
from .graded.specs import all_specs, builtin_specs, specs_for_dim
from .graded.verify import colour_jacobi_sweep, verify_algebra
from .oscillator import DEFAULT_NMAX, OscillatorModel, build_registry
from .parastat import format_matrix, parastatistics_audit
from .report import VerificationReport
from .spectrum import SpectrumReport, spectrum_report, vacuum_checks

COMMANDS = ("verify-algebra", "jacobi", "spectrum", "fock-basis", "parastat-audit", "report-all")
SCHEMA_VERSION = 1

# per-suite tolerances used when --tol is not given
DEFAULT_TOLS = {
    "algebra": 1e-10, "jacobi": 1e-10, "parastat": 1e-10, "spectrum": 1e-8,
    "vacuum": 1e-12, "basis": 1e-9, "actions": 1e-8, "injectivity": 1e-10,
}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    dim: int = 1
    mass: float = 1.0
    omega: float = 1.0
    n_max: Optional[int] = None
    algebra: str = "all"
    format: str = "text"
    tol: Optional[float] = None
    edge_tol: float = 1e-8
    seed: int = 0
    literal: bool = False
    export_basis: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.dim not in (1, 2, 3):
            raise ConfigError(f"--dim must be 1, 2 or 3, got {self.dim}")
        if not (self.mass > 0 and self.omega > 0):
            raise ConfigError("--mass and --omega must be positive")
        if self.n_max is None:
            self.n_max = DEFAULT_NMAX[self.dim]
        if self.n_max < 2:
            raise ConfigError("--n-max must be at least 2 (the trust window is n <= n_max - 2)")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"--format must be json, csv or text, got {self.format!r}")
        if self.algebra != "all":
            specs = all_specs()
            if self.algebra not in specs:
                raise ConfigError(f"unknown algebra {self.algebra!r}; choose from {sorted(specs)}")
            if specs[self.algebra].dim != self.dim:
                raise ConfigError(f"algebra {self.algebra} is realised in dimension "
                                  f"{specs[self.algebra].dim}, not {self.dim}")
        if self.command == "fock-basis" and self.dim != 3:
            raise ConfigError("fock-basis needs --dim 3")

    def tolerance(self, suite):
        return DEFAULT_TOLS[suite] if self.tol is None else self.tol


def spectrum_as_checks(rep: SpectrumReport) -> VerificationReport:
    """One check per analytic energy (multiplicity) plus one per unmatched eigenvalue."""
    out = VerificationReport("spectrum", rep.tol, meta={
        "trusted_count": rep.trusted_count, "window": rep.window, "edge_tol": rep.edge_tol})
    errs = {}
    for mt in rep.matches:
        if mt.e_analytic is not None:
            errs[mt.e_analytic] = max(errs.get(mt.e_analytic, 0.0), mt.abs_err)
    for row in rep.multiplicities:
        e = row["energy"]
        ok = row["expected"] == row["observed"]
        out.add(f"E={e:.12g}", errs.get(e, 0.0), passed=ok and errs.get(e, 0.0) <= rep.tol,
                note=f"multiplicity expected {row['expected']}, observed {row['observed']}")
    for mt in rep.matches:
        if mt.e_analytic is None:
            out.add(f"unmatched E={mt.e_numeric:.12g}", float("inf"), passed=False)
    return out


# --------------------------------------------------------------- suites

def _algebra_specs(cfg, generators_only=False):
    if cfg.algebra != "all":
        spec = all_specs()[cfg.algebra]
        if generators_only and spec.closure is None:
            raise ConfigError(f"{cfg.algebra} is a relation list without a generator basis; "
                              "the Jacobi sweep needs generators")
        return [spec]
    pool = builtin_specs() if generators_only else specs_for_dim(cfg.dim)
    return [s for s in pool if s.dim == cfg.dim]


def run_verify_algebra(cfg, reg):
    specs = _algebra_specs(cfg)
    reports = [verify_algebra(s, reg, tol=cfg.tolerance("algebra"), literal=cfg.literal) for s in specs]
    if any(s.name.startswith("pso") and s.dim == 2 for s in specs):
        reports.append(chiral_annihilation(reg, seed=cfg.seed, tol=cfg.tolerance("algebra")))
    return reports


def run_jacobi(cfg, reg):
    out = []
    for s in _algebra_specs(cfg, generators_only=True):
        rep = colour_jacobi_sweep(s, reg, tol=cfg.tolerance("jacobi"))
        rep.name = f"jacobi:{s.name}"
        out.append(rep)
    return out


def run_spectrum(cfg, reg):
    srep = spectrum_report(reg, tol=cfg.tolerance("spectrum"), edge_tol=cfg.edge_tol)
    return [spectrum_as_checks(srep), vacuum_checks(reg, tol=cfg.tolerance("vacuum"))], srep


def run_fock_basis(cfg, reg):
    basis = build_basis(reg, check=False)
    reports = [basis_invariants(basis, tol=cfg.tolerance("basis")),
               verify_actions(basis, tol=cfg.tolerance("actions")),
               injectivity_report(reg, seed=cfg.seed, tol=cfg.tolerance("injectivity"))]
    k_max = min(4, cfg.n_max // 2 - 1)
    if k_max >= 1:
        tp = t_power_brackets(reg, k_max=k_max, tol=cfg.tolerance("algebra"))
        tp.meta["k_max"] = k_max
        if k_max < 4:
            tp.meta["note"] = f"k limited to {k_max} by n_max={cfg.n_max}; k=4 needs n_max >= 10"
        reports.append(tp)
    if cfg.export_basis:
        with open(cfg.export_basis, "w") as fp:
            export_jsonl(basis, fp)
    return reports


def run_parastat(cfg, reg):
    return [parastatistics_audit(reg, tol=cfg.tolerance("parastat"))]


def run(cfg: RunConfig):
    """Execute the configured command; returns ``(reports, spectrum_report_or_None)``."""
    reg = build_registry(OscillatorModel(cfg.dim, cfg.mass, cfg.omega, cfg.n_max))
    srep = None
    if cfg.command == "verify-algebra":
        reports = run_verify_algebra(cfg, reg)
    elif cfg.command == "jacobi":
        reports = run_jacobi(cfg, reg)
    elif cfg.command == "spectrum":
        reports, srep = run_spectrum(cfg, reg)
    elif cfg.command == "fock-basis":
        reports = run_fock_basis(cfg, reg)
    elif cfg.command == "parastat-audit":
        reports = run_parastat(cfg, reg)
    else:
        reports = run_verify_algebra(cfg, reg) + run_jacobi(cfg, reg)
        spec_reports, srep = run_spectrum(cfg, reg)
        reports += spec_reports + run_parastat(cfg, reg)
        if cfg.dim == 3:
            reports += run_fock_basis(cfg, reg)
    return reports, srep


# ------------------------------------------------------------ rendering

def _config_dict(cfg):
    d = asdict(cfg)
    d.pop("export_basis")
    return d


def render(cfg, reports: List[VerificationReport], srep: Optional[SpectrumReport]) -> str:
    passed = all(r.passed for r in reports)
    if cfg.format == "json":
        doc = {"schema": SCHEMA_VERSION, "command": cfg.command, "config": _config_dict(cfg),
               "passed": passed, "reports": [r.as_dict() for r in reports]}
        if srep is not None:
            doc["spectrum"] = srep.as_dict()
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.format == "csv":
        if cfg.command == "spectrum":
            return srep.to_csv()
        lines = ["report,id,residual,passed,depth,note"]
        for r in reports:
            for c in r.checks:
                note = c.note.replace('"', "'")
                lines.append(f'{r.name},"{c.id}",{c.residual!r},{c.passed},'
                             f'{"" if c.depth is None else c.depth},"{note}"')
        return "\n".join(lines) + "\n"
    out = [f"# {cfg.command}: dim={cfg.dim} m={cfg.mass} omega={cfg.omega} n_max={cfg.n_max} seed={cfg.seed}"]
    for r in reports:
        out.append(r.summary())
        for c in r.failures()[:20]:
            out.append(f"    FAIL {c.id}: residual {c.residual:.3e} {c.note}".rstrip())
        if len(r.failures()) > 20:
            out.append(f"    ... {len(r.failures()) - 20} more failures")
        if r.name.startswith("parastat-audit"):
            out.append(format_matrix(r))
    if srep is not None:
        out.append(f"trusted eigenvalues: {srep.trusted_count} (window n <= {srep.window}, "
                   f"edge weight < {srep.edge_tol:g}); max error {srep.max_error:.3e}")
        out.append(f"{'E_analytic':>22} {'expected':>9} {'observed':>9}")
        for row in srep.multiplicities:
            out.append(f"{row['energy']:>22.15f} {row['expected']:>9d} {row['observed']:>9d}")
    out.append("RESULT: " + ("PASS" if passed else "FAIL"))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------- parsing

def build_parser():
    p = argparse.ArgumentParser(prog="diracosc", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--dim", type=int, default=1, choices=(1, 2, 3))
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--n-max", type=int, default=None, help="Fock cutoff per mode (default 40/16/8 for 1/2/3D)")
    p.add_argument("--algebra", default="all", help="algebra or relation-set name, or 'all'")
    p.add_argument("--format", default="text", choices=("json", "csv", "text"))
    p.add_argument("--tol", type=float, default=None, help="override every suite tolerance")
    p.add_argument("--edge-tol", type=float, default=1e-8, help="trust-window edge weight threshold")
    p.add_argument("--seed", type=int, default=0, help="seed for the randomised positivity checks")
    p.add_argument("--out", default=None, help="also write the report to this file")
    p.add_argument("--literal", action="store_true", help="check right-hand sides exactly as printed")
    p.add_argument("--export-basis", default=None, help="fock-basis: write the basis as JSON lines")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(args.command, args.dim, args.mass, args.omega, args.n_max, args.algebra,
                        args.format, args.tol, args.edge_tol, args.seed, args.literal, args.export_basis)
        reports, srep = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # cutoff too small for a requested interior depth and similar
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    text = render(cfg, reports, srep)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fp:
            fp.write(text)
    return 0 if all(r.passed for r in reports) else 1
