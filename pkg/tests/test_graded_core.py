import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import sparse

from diracosc.graded.core import (GradedOperator, add_degrees, colour_bracket, commutation_factor,
                                  format_degree, max_abs, parse_degree, split_bracket)

degrees = st.integers(1, 3).flatmap(lambda k: st.tuples(*[st.integers(0, 1)] * k))


def same_length(n):
    return st.tuples(*[st.tuples(*[st.integers(0, 1)] * 3)] * n)


@given(same_length(3))
def test_commutation_factor_is_bimultiplicative(abc):
    a, b, c = abc
    assert commutation_factor(a, b) == commutation_factor(b, a)
    assert commutation_factor(add_degrees(a, b), c) == commutation_factor(a, c) * commutation_factor(b, c)
    assert commutation_factor(a, a) in (1, -1)


@given(degrees)
def test_degree_text_round_trip(d):
    assert parse_degree(format_degree(d)) == d


def test_degree_errors():
    with pytest.raises(ValueError):
        parse_degree("012")
    with pytest.raises(ValueError):
        parse_degree("")
    with pytest.raises(ValueError):
        add_degrees((0, 1), (1,))
    assert format_degree(None) == "inhomogeneous"


@settings(max_examples=40, deadline=None)
@given(same_length(2), st.integers(0, 2 ** 31 - 1))
def test_colour_bracket_antisymmetry(deg, seed):
    rng = np.random.default_rng(seed)
    a, b = (sparse.csr_matrix(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))) for _ in range(2))
    X, Y = GradedOperator("X", a, deg[0]), GradedOperator("Y", b, deg[1])
    lhs = colour_bracket(X, Y)
    rhs = -commutation_factor(*deg) * colour_bracket(Y, X)
    assert max_abs(lhs - rhs) < 1e-12


def test_inhomogeneous_bracket_needs_split():
    X = GradedOperator("X", sparse.identity(3, format="csr"), None)
    Y = GradedOperator("Y", sparse.identity(3, format="csr"), (1,))
    with pytest.raises(ValueError):
        colour_bracket(X, Y)
    out = split_bracket([(1.0, Y), (2.0, Y.relabel("Z", "0"))], [(1.0, Y)])
    # {Y,Y} + 2 [Z,Y] with Y = Z = Id
    assert np.allclose(out.toarray(), 2 * np.eye(3))


def test_operator_arithmetic_tracks_degree_and_reach():
    I = sparse.identity(2, dtype=complex, format="csr")
    X = GradedOperator("X", I, (1, 0), reach=1)
    Y = GradedOperator("Y", I, (0, 1), reach=2)
    assert (X @ Y).degree == (1, 1) and (X @ Y).reach == 3
    assert (X + Y).degree is None
    assert (X + X).degree == (1, 0)
    assert (X ** 3).reach == 3
    assert max_abs((X - X).matrix) == 0.0
