from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from octavic.clifford import (NEG_OCTAVE, CliffordElement, CliffordError, GramSpace,
                              change_basis, cl_grade, cl_involution, cl_is_one_mod2,
                              embed_vector)
from octavic.embedding import LATTICE_SPACE, from_lattice_coordinates, lattice_coordinates

sp = NEG_OCTAVE
e = [sp.gen(i) for i in range(8)]


def elements(space, max_terms=4):
    term = st.tuples(st.integers(0, (1 << space.rank) - 1),
                     st.fractions(min_value=-3, max_value=3, max_denominator=2))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: CliffordElement(space, {m: c for m, c in ts}))


def test_generator_relations():
    for i in range(8):
        assert e[i] * e[i] == -1
        for j in range(i + 1, 8):
            assert e[i] * e[j] == -(e[j] * e[i])
    b = e[1] * e[2]
    assert b * b == -1
    assert cl_involution(b) == -b
    assert cl_involution(e[3]) == -e[3]


def test_involution_signs_by_grade():
    signs = []
    for k in range(6):
        m = sp.monomial(range(k))
        signs.append(cl_involution(m) == m)
    assert signs == [True, False, False, True, True, False]


@settings(max_examples=60, deadline=None)
@given(elements(sp), elements(sp), elements(sp))
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=60, deadline=None)
@given(elements(sp), elements(sp))
def test_involution_anti_automorphism(x, y):
    assert cl_involution(x * y) == cl_involution(y) * cl_involution(x)
    assert cl_involution(cl_involution(x)) == x


@settings(max_examples=40, deadline=None)
@given(elements(LATTICE_SPACE, 3), elements(LATTICE_SPACE, 3))
def test_non_orthogonal_gram(x, y):
    # the lattice basis has off-diagonal Gram entries; compare with the e-basis
    ex, ey = from_lattice_coordinates(x), from_lattice_coordinates(y)
    assert from_lattice_coordinates(x * y) == ex * ey
    assert from_lattice_coordinates(cl_involution(x)) == cl_involution(ex)
    assert lattice_coordinates(ex) == x


def test_vector_square_is_quadratic_form():
    g = ((2, 1, 0), (1, -2, 1), (0, 1, 4))
    space = GramSpace(g)
    v = embed_vector(space, (1, 2, -1))
    q = Fraction(sum(a * g[i][j] * b for i, a in enumerate((1, 2, -1))
                     for j, b in enumerate((1, 2, -1))), 2)
    assert v * v == space.scalar(q)


def test_change_basis_identity():
    x = e[0] * e[5] + e[2] * Fraction(1, 2)
    ident = [[int(i == j) for j in range(8)] for i in range(8)]
    assert change_basis(x, sp, ident) == x


def test_grade_and_mod2():
    x = 3 * sp.one() + e[1] * e[2] * 2
    assert cl_grade(x, 2) == e[1] * e[2] * 2
    assert cl_is_one_mod2(x)
    assert not cl_is_one_mod2(x + e[1] * e[2])
    assert not cl_is_one_mod2(x - 1)
    with pytest.raises(CliffordError):
        cl_is_one_mod2(e[1] / 2)
    with pytest.raises(CliffordError):
        cl_grade(x, 9)


def test_bad_spaces():
    with pytest.raises(CliffordError):
        GramSpace(((1, 2), (3, 1)))
    with pytest.raises(CliffordError):
        GramSpace(tuple(tuple(0 for _ in range(13)) for _ in range(13)))
    other = GramSpace(((2,),))
    with pytest.raises(CliffordError):
        _ = other.gen(0) * e[0]
