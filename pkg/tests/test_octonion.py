from fractions import Fraction
import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from octavic.octonion import (CONJ_F, E_TO_F_INT, F2_INT, GRAM_S, STRUCT_F, TRIPLE_F,
                              IntegralOctave, Octave, basis_convert, enumerate_by_norm,
                              f_basis, fmul, left_mult_f, oct_conj, oct_mul, oct_norm,
                              oct_trace, q_matrix_f, triple_trace, vectors_by_norm)

small = st.integers(-4, 4)
fvec = st.lists(small, min_size=8, max_size=8)
octs = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4),
                min_size=8, max_size=8).map(Octave)


def test_table_units_and_squares():
    e = [Octave.basis(i) for i in range(8)]
    for i in range(8):
        assert e[0] * e[i] == e[i] == e[i] * e[0]
    for i in range(1, 8):
        assert e[i] * e[i] == -e[0]
        for j in range(1, 8):
            if i != j:
                assert e[i] * e[j] == -(e[j] * e[i])


def test_table_sample_products():
    e = [Octave.basis(i) for i in range(8)]
    assert e[1] * e[2] == e[4]
    assert e[3] * e[5] == e[2]
    assert e[7] * e[1] == e[3]


@settings(max_examples=200, deadline=None)
@given(octs, octs)
def test_norm_multiplicative_exact(x, y):
    assert oct_norm(x * y) == oct_norm(x) * oct_norm(y)


@settings(max_examples=100, deadline=None)
@given(octs, octs)
def test_alternative_laws(x, y):
    assert (x * x) * y == x * (x * y)
    assert (y * x) * x == y * (x * x)
    assert (x * y) * x == x * (y * x)


@settings(max_examples=100, deadline=None)
@given(octs, octs, octs)
def test_triple_trace_is_associative(a, b, c):
    assert oct_trace((a * b) * c) == oct_trace(a * (b * c))


@settings(max_examples=100, deadline=None)
@given(octs, octs)
def test_conjugation_reverses(x, y):
    assert oct_conj(x * y) == oct_conj(y) * oct_conj(x)
    assert x * oct_conj(x) == Octave([oct_norm(x)] + [0] * 7)


def test_f_basis_examples():
    f = f_basis()
    assert f[0] * f[0] == Octave.basis(0)
    # f4 squares to -e0 (norm 1, trace -2); f5 is the one with trace -1
    assert f[4] * f[4] == -Octave.basis(0)
    assert oct_norm(f[4]) == 1 and oct_trace(f[4]) == 0 and oct_trace(f[4] * f[4]) == -2
    assert oct_norm(f[5]) == 1 and oct_trace(f[5]) == -1
    assert triple_trace(Octave.basis(1), Octave.basis(2), Octave.basis(4)) == -2


def test_gram_matrix():
    assert GRAM_S.tolist() == (F2_INT @ F2_INT.T // 2).tolist()
    assert round(np.linalg.det(GRAM_S)) == 1
    assert (np.diag(GRAM_S) % 2 == 0).all()
    assert np.linalg.eigvalsh(GRAM_S.astype(float)).min() > 0
    inv = np.linalg.inv(GRAM_S)
    assert np.allclose(np.diag(inv), [2, 4, 4, 2, 6, 2, 2, 2])


def test_basis_convert_roundtrip():
    e4 = basis_convert(Octave.basis(4).coords, "e_to_f")
    assert [int(c) for c in e4] == [0, 1, 1, 1, -2, 0, 0, 0]
    for i in range(8):
        v = tuple(Fraction(int(i == k)) for k in range(8))
        assert basis_convert(basis_convert(v, "f_to_e"), "e_to_f") == v
    assert (E_TO_F_INT @ (F2_INT.T / 2) == np.eye(8)).all()
    with pytest.raises(ValueError):
        basis_convert(v, "sideways")


def test_order_closed_and_tables_agree():
    f = f_basis()
    for i, j in itertools.product(range(8), repeat=2):
        p = f[i] * f[j]
        assert p.is_integral()
        assert list(IntegralOctave.from_octave(p).fcoords) == STRUCT_F[i, j].tolist()
        for k in range(8):
            assert triple_trace(oct_conj(f[i]), f[k], f[j]) == TRIPLE_F[i, k, j]


@settings(max_examples=200, deadline=None)
@given(fvec, fvec)
def test_integral_octave_matches_exact(x, y):
    a, b = IntegralOctave(x), IntegralOctave(y)
    exact = a.to_octave() * b.to_octave()
    assert (a * b).to_octave() == exact
    assert a.norm() == oct_norm(a.to_octave())
    assert a.trace() == oct_trace(a.to_octave())
    assert a.conj().to_octave() == oct_conj(a.to_octave())
    assert (left_mult_f(np.array(x)) @ np.array(y)).tolist() == list((a * b).fcoords)


def test_q_matrix_at_unit_is_gram():
    assert (q_matrix_f(np.eye(8, dtype=np.int64)[0]) == GRAM_S).all()


def test_conj_matrix_is_involution():
    assert (CONJ_F @ CONJ_F == np.eye(8)).all()


def test_half_integral_octave_rejected():
    with pytest.raises(ValueError):
        IntegralOctave.from_octave(Octave([Fraction(1, 2)] + [0] * 7))
    with pytest.raises(ValueError):
        Octave([1, 2])


def test_shell_counts_and_order():
    assert [len(vectors_by_norm(n)) for n in range(5)] == [1, 240, 2160, 6720, 17520]
    shell = vectors_by_norm(2)
    assert shell.tolist() == sorted(shell.tolist())
    assert all(x.norm() == 2 for x in enumerate_by_norm(2))
    with pytest.raises(ValueError):
        enumerate_by_norm(-1)


def test_batched_fmul_matches_scalar(rng):
    x = rng.integers(-3, 4, (50, 8))
    y = rng.integers(-3, 4, (50, 8))
    batch = fmul(x, y)
    for k in range(50):
        assert batch[k].tolist() == list((IntegralOctave(x[k]) * IntegralOctave(y[k])).fcoords)
