import pytest

from diracosc.graded.specs import builtin_specs, get_spec, specs_for_dim
from diracosc.graded.verify import (check_bracket_types, colour_jacobi_sweep, nested_commutator_rank,
                                    verify_algebra)
from diracosc.oscillator import OscillatorModel, build_registry

ALL = [s.name for d in (1, 2, 3) for s in specs_for_dim(d)]


@pytest.fixture(scope="module")
def regs(reg1, reg2, reg3):
    return {1: reg1, 2: reg2, 3: reg3}


@pytest.fixture(scope="module")
def off_unit():
    """Small cutoffs with m, omega away from 1, so omega-free printed forms differ."""
    return {d: build_registry(OscillatorModel(d, 1.5, 2.0, n)) for d, n in ((1, 12), (2, 8), (3, 6))}


@pytest.mark.parametrize("name", ALL)
def test_every_presentation_holds_at_default_cutoff(name, regs):
    spec = get_spec(name)
    rep = verify_algebra(spec, regs[spec.dim])
    assert rep.passed, [(c.id, c.residual) for c in rep.failures()[:5]]
    assert rep.max_residual < 1e-10


@pytest.mark.parametrize("name", ALL)
def test_printed_failures_are_flagged_corrections(name, off_unit):
    spec = get_spec(name)
    reg = off_unit[spec.dim]
    assert verify_algebra(spec, reg, closure=False).passed
    literal = verify_algebra(spec, reg, literal=True, closure=False)
    corrected = {iid for rel in spec.relations if "corrected" in rel.flags
                 for iid, _, _ in rel.instances(spec.cyclic)}
    failed = {c.id for c in literal.failures()}
    assert failed <= corrected
    assert bool(failed) == bool(corrected)


def test_swapped_degrees_are_detected(reg1):
    spec = get_spec("bfa(1|1)")
    bad = spec.with_degrees({"b-": "1", "b+": "1", "s-": "0", "s+": "0"})
    rep = verify_algebra(bad, reg1)
    assert not rep.passed
    assert not check_bracket_types(bad).passed


@pytest.mark.parametrize("name", [s.name for s in builtin_specs() if s.name not in ("z2cubed", "pso+(3|4)", "pso-(3|4)")])
def test_colour_jacobi(name, regs):
    spec = get_spec(name)
    rep = colour_jacobi_sweep(spec, regs[spec.dim])
    assert rep.passed


def test_nested_commutator_sequence_is_independent(reg3):
    rank, depth = nested_commutator_rank(reg3, length=5)
    assert (rank, depth) == (5, 5)


def test_depth_beyond_cutoff_is_rejected():
    reg = build_registry(OscillatorModel(1, 1.0, 1.0, 2))
    with pytest.raises(ValueError):
        verify_algebra(get_spec("pso(3|2)"), reg, depth=3)
