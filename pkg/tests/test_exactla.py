import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from octavic import exactla as ex

P1, P2 = ex.PrimeField(10009), ex.PrimeField(1000033)


def byte_identity(n):
    m = np.full((n, n), 255, dtype=np.uint8)
    np.fill_diagonal(m, 0)
    return m


def test_prime_field():
    for f in (P1, P2):
        s = f.sqrt_minus_one
        assert s * s % f.p == f.p - 1 and s < f.p - s
    for bad in (7, 15, 4, 2 ** 21 + 17, 1):
        with pytest.raises(ex.LinAlgError):
            ex.PrimeField(bad)


def test_entry_mod_p():
    assert ex.entry_mod_p(0, P1) == 1
    assert ex.entry_mod_p(2, P1) == P1.p - 1
    assert ex.entry_mod_p(255, P1) == 0
    assert ex.entry_mod_p(1, P1) ** 2 % P1.p == P1.p - 1
    with pytest.raises(ex.LinAlgError):
        ex.entry_mod_p(7, P1)
    with pytest.raises(ex.LinAlgError):
        ex.bytes_mod_p(np.array([[4]]), P1)


def test_dedupe_small():
    m = np.tile(np.array([[1], [3], [255]], dtype=np.uint8), (1, 9))
    d = ex.dedupe_columns(m)
    assert d.columns.shape == (3, 1) and d.counts.tolist() == [9]
    assert (d.restore() == m).all()


def test_dedupe_cusp_matrix(cusp_matrix):
    d = ex.dedupe_columns(cusp_matrix.entries)
    assert d.columns.shape[1] == 2823 < 65536
    assert d.restore().tobytes() == cusp_matrix.entries.tobytes()


def test_rank_small_cases():
    assert ex.rank_mod_p(np.full((5, 7), 255, dtype=np.uint8), P1) == 0
    assert ex.rank_mod_p(byte_identity(10), P1) == 10
    m = byte_identity(4)
    m[0, 1] = 0
    assert ex.rank_mod_p(m, P1) == 4
    # rows 0 and 1 equal up to the factor i
    m = np.array([[0, 1, 255], [1, 2, 255], [255, 255, 3]], dtype=np.uint8)
    assert ex.rank_mod_p(m, P1) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2 ** 32 - 1))
def test_rank_mod_p_agrees_with_char0(n, m, seed):
    r = np.random.default_rng(seed)
    a = r.choice(np.array([0, 1, 2, 3, 255], dtype=np.uint8), size=(n, m))
    assert ex.rank_mod_p(a, P1) <= ex.rank_char0(a)
    assert ex.rank_mod_p(a, P2) == ex.rank_char0(a)


def test_bareiss_known():
    assert ex.bareiss_rank([[2, 4], [1, 2]]) == 1
    assert ex.bareiss_rank([[0, 0, 1], [0, 2, 0], [3, 0, 0]]) == 3
    assert ex.bareiss_rank(np.zeros((3, 3), dtype=int)) == 0


def test_submatrix_invariances(cusp_matrix, rng):
    rows = rng.choice(2047, 200, replace=False)
    cols = rng.choice(65536, 500, replace=False)
    sub = cusp_matrix.entries[np.ix_(rows, cols)]
    base = ex.rank_mod_p(sub, P1)
    assert ex.rank_mod_p(sub, P1, dedupe=False) == base
    assert ex.rank_mod_p(sub[rng.permutation(200)][:, rng.permutation(500)], P1) == base
    assert ex.rank_mod_p(sub, P1, batch=1) == base
    assert ex.rank_mod_p(sub, P2) == base


def test_char0_rank_on_small_block(cusp_matrix, rng):
    rows = rng.choice(np.arange(1024, 2047), 30, replace=False)
    cols = rng.choice(65536, 40, replace=False)
    sub = cusp_matrix.entries[np.ix_(rows, cols)]
    assert ex.rank_char0(sub) == ex.rank_mod_p(sub, P1) == ex.rank_mod_p(sub, P2)


def test_span_membership_small(cusp_matrix, rng):
    sub = cusp_matrix.entries[:300, rng.choice(65536, 400, replace=False)]
    cols = ex.bytes_mod_p(sub.T, P1)
    elim = ex.eliminate(cols, P1.p)
    assert ex.in_span_mod_p(cols[17].astype(np.int64), sub, P1, elim)
    assert ex.in_span_mod_p(np.zeros(300, dtype=np.int64), sub, P1, elim)
    recon = np.mod(cols[:, elim.pivots] @ elim.basis, P1.p)
    assert (recon == cols).all()
    if elim.rank < 300:
        hits = sum(ex.in_span_mod_p(rng.integers(0, P1.p, 300), sub, P1, elim) for _ in range(5))
        assert hits == 0


def test_certificate_json(rank_certificate):
    text = rank_certificate.to_json()
    back = ex.RankCertificate.from_json(text)
    assert back.ranks == rank_certificate.ranks
    assert json.loads(text)["consistent"] is True
    assert rank_certificate.column_dedupe_stats["distinct"] == 2823
    assert len(rank_certificate.pivot_columns) == rank_certificate.rank


def test_prime_bound_guard():
    with pytest.raises(ex.LinAlgError):
        ex.eliminate(np.zeros((1, 3)), 2 ** 21 + 1)
