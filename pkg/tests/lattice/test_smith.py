"""Tests for Smith and Hermite normal forms over A."""

import pytest

from src.drinfeld_modpoly.algebra.grammar import parse_matrix
from src.drinfeld_modpoly.errors import ShapeError, SingularMatrixError
from src.drinfeld_modpoly.lattices.smith import (
    contains,
    determinant,
    format_matrix,
    hermite_normal_form,
    smith_normal_form,
)


def test_cyclic_invariant_factors(A2):
    T = A2.T
    assert smith_normal_form(parse_matrix("T,1;0,T", A2)) == [A2.one(), T**2]


def test_diagonal_invariant_factors(A2):
    T = A2.T
    assert smith_normal_form(parse_matrix("T^2,0;0,T", A2)) == [T, T**2]


def test_invariant_factors_are_monic(A3):
    T = A3.T
    assert smith_normal_form(parse_matrix("2*T,0;0,2", A3)) == [A3.one(), T]


def test_coprime_diagonal_is_cyclic(A2):
    T = A2.T
    assert smith_normal_form(parse_matrix("T,0;0,T+1", A2)) == [A2.one(), T**2 + T]


def test_singular_matrix_rejected(A2):
    with pytest.raises(SingularMatrixError):
        smith_normal_form(parse_matrix("T,T;T,T", A2))


def test_non_square_matrix_rejected(A2):
    with pytest.raises(ShapeError):
        smith_normal_form([[A2.T, A2.one()]])


def test_hermite_form_reduces_above_diagonal(A2):
    H = hermite_normal_form(parse_matrix("1,0;T,1", A2))
    assert format_matrix(H) == "1,0;0,1"


def test_hermite_form_keeps_reduced_basis(A2):
    H = hermite_normal_form(parse_matrix("T,1;0,T", A2))
    assert format_matrix(H) == "T,1;0,T"


def test_determinant(A2):
    T = A2.T
    assert determinant(parse_matrix("T,1;1,T", A2)) == T**2 + 1


def test_containment(A2):
    identity = parse_matrix("1,0;0,1", A2)
    small = parse_matrix("T,1;0,T", A2)
    assert contains(identity, small)
    assert not contains(small, identity)
    assert contains(parse_matrix("T,0;0,1", A2), small)
    assert not contains(parse_matrix("1,1;0,T", A2), small)
