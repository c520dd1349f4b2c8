from fractions import Fraction
import cmath
import hashlib

import numpy as np
import pytest

from octavic import cusps as cu
from octavic.octonion import GRAM_S, IntegralOctave
from octavic.verify import suite_cusps

F0 = IntegralOctave.basis(0)
ZERO = IntegralOctave((0,) * 8)
Z8 = (0,) * 8
ROWS = cu.enumerate_cusp_R()


def R2(r1, r2, r=Z8):
    return cu.HermitianR(r1, r2, r, "zero_two")


def R1(r1, r2, r=Z8):
    return cu.HermitianR(r1, r2, r, "zero_one")


def test_mod2_form_examples():
    assert cu.mod2_form((0,) * 12) == 0
    assert cu.mod2_form((1, 1) + (0,) * 10) == 1
    assert cu.mod2_form((1, 1, 0, 0, 1) + (0,) * 7) == 0


def test_isotropic_counts():
    iso = cu.enumerate_isotropic()
    assert len(iso) == 2079
    assert len(cu.enumerate_isotropic(include_zero=True)) == 2 ** 11 + 2 ** 5
    assert sum(c.v[0] for c in iso) == 1024
    assert iso == sorted(iso)
    assert all(cu.mod2_form(c.v) == 0 for c in iso)


def test_isotropic_brute_force():
    # independent count straight from the quadratic form on all 4096 vectors
    count = 0
    for code in range(1, 4096):
        v = [(code >> k) & 1 for k in range(12)]
        x = np.array(v[4:])
        if (v[0] * v[1] + v[2] * v[3] + int(x @ GRAM_S @ x) // 2) % 2 == 0:
            count += 1
    assert count == 2079


def test_isotropic_class_validation():
    with pytest.raises(cu.CuspError):
        cu.IsotropicClass((0,) * 12)
    with pytest.raises(cu.CuspError):
        cu.IsotropicClass((1, 1) + (0,) * 10)


def test_cusp_rows():
    assert len(ROWS) == 2047
    assert len(set(ROWS)) == 2047
    zeros = [r for r in ROWS if not (r.r1 or r.r2 or any(r.r))]
    assert len(zeros) == 1 and zeros[0].kind == "zero_two"
    assert sum(r.kind == "zero_two" for r in ROWS) == 1024
    assert all(r.bits() == k for k, r in enumerate(ROWS[:1024]))
    with pytest.raises(cu.CuspError):
        R1(0, 0)
    with pytest.raises(cu.CuspError):
        R2(1, 0)
    with pytest.raises(cu.CuspError):
        cu.HermitianR(0, 0, Z8, "zero_three")


def test_bracket_examples():
    assert cu.r_bracket(R2(0, 0), F0, F0) == 0
    assert cu.r_bracket(R2(2, 0), F0, ZERO) == 2
    assert cu.r_bracket(R1(0, 0, (1,) + (0,) * 7), F0, F0) == 2


def test_evenness_examples(rng):
    r_f0 = R1(0, 0, (1,) + (0,) * 7)
    for _ in range(20):
        g = (rng.integers(-3, 4, 8), rng.integers(-3, 4, 8))
        assert cu.rg_even(R2(0, 0), g)
        assert cu.rg_even(R2(2, 2), g)
    assert not cu.rg_even(r_f0, (F0, ZERO))


def test_numerator_examples():
    for R in ROWS[::97]:
        assert cu.numerator_entry(R, 0) == 0
    for a in range(0, 65536, 4099):
        assert cu.numerator_entry(ROWS[0], a) == 0
    assert cu.numerator_entry(R2(2, 0), 1) == 2


def test_denominator_examples():
    assert cu.denominator_sum(R2(0, 0)) == 65536
    assert cu.denominator_sum(R2(2, 2)) == 65536


def test_matrix_shape_and_trivial_lines(cusp_matrix):
    assert cusp_matrix.shape == (2047, 65536)
    assert (cusp_matrix.entries[0] == 0).all()
    assert (cusp_matrix.entries[:, 0] == 0).all()
    assert set(np.unique(cusp_matrix.entries)) <= {0, 1, 2, 3, 255}


def test_matrix_matches_scalar_path(cusp_matrix, rng):
    for _ in range(300):
        k, a = int(rng.integers(2047)), int(rng.integers(65536))
        assert cusp_matrix.entries[k, a] == cu.numerator_entry(ROWS[k], a)


def test_denominators_by_direct_sum(cusp_matrix, rng):
    g = ((np.arange(65536)[:, None] >> np.arange(16)) & 1).astype(np.int64)
    for k in list(rng.choice(2047, 12, replace=False)) + [0, 1023, 2046]:
        br, d = cu._bracket_array(cu.RationalR.from_cusp(ROWS[k]), g)
        assert d == 1
        assert int(np.sum((-1) ** (br % 2))) == cusp_matrix.denominators[k]
    assert (cusp_matrix.denominators != 0).all()
    assert set(np.abs(cusp_matrix.denominators)) <= {256, 4096, 65536}


def test_lift_independence(cusp_matrix, rng):
    for _ in range(10_000):
        k, a = int(rng.integers(2047)), int(rng.integers(65536))
        h1, h2 = cu.lift(a)
        g1 = h1 + 2 * rng.integers(-2, 3, 8)
        g2 = h2 + 2 * rng.integers(-2, 3, 8)
        R = ROWS[k]
        val = cu.r_bracket(R, g1, g2) % 4 if cu.rg_even(R, (g1, g2)) else 255
        assert val == cusp_matrix.entries[k, a]


def test_character_sum_dichotomy(rng):
    for _ in range(15):
        R = ROWS[int(rng.integers(2047))]
        g = (rng.integers(-2, 3, 8), rng.integers(-2, 3, 8))
        s = cu.character_sum(R, g)
        assert s in (0, 65536)
        assert (s == 65536) == cu.rg_even(R, g)


def test_cusp_classes(cusp_matrix):
    classes = [cu.cusp_class(R) for R in ROWS]
    assert len(set(classes)) == 1552
    assert sum(c.v == (0, 1) + (0,) * 10 for c in classes) == 496
    res = suite_cusps(0, cusp_matrix, lift_samples=10)
    assert res.passed, res.to_dict()


def test_file_roundtrip(cusp_matrix, tmp_path):
    path = tmp_path / "m.octt"
    digest = cusp_matrix.write(path)
    raw = path.read_bytes()
    assert raw[:4] == b"OCTT"
    assert raw[4:16] == (1).to_bytes(4, "little") + (2047).to_bytes(4, "little") + \
        (65536).to_bytes(4, "little")
    assert len(raw) == 16 + 2047 * 65536 + 8 * 2047
    assert hashlib.sha256(raw).hexdigest() == digest
    back = cu.CuspMatrix.read(path)
    assert (back.entries == cusp_matrix.entries).all()
    assert (back.denominators == cusp_matrix.denominators).all()
    path.write_bytes(raw[:-3])
    with pytest.raises(cu.CuspError):
        cu.CuspMatrix.read(path)
    path.write_bytes(b"XXXX" + raw[4:100])
    with pytest.raises(cu.CuspError):
        cu.CuspMatrix.read(path)


def test_build_independent_of_threads(cusp_matrix, monkeypatch):
    monkeypatch.setenv("OCTAVIC_THREADS", "3")
    again = cu.build_cusp_matrix()
    assert again.sha256() == cusp_matrix.sha256()
    monkeypatch.setenv("OCTAVIC_THREADS", "many")
    with pytest.raises(cu.CuspError):
        cu.thread_count()


def test_gauss_int():
    i = cu.GaussInt.i_power(1)
    assert i * i == cu.GaussInt(-1, 0)
    assert cu.GaussInt(2, 3) + 1 == cu.GaussInt(3, 3)
    assert complex(cu.byte_value(3)) == -1j
    assert cu.byte_value(255) == cu.GaussInt(0, 0)


def test_cyclotomic_arithmetic():
    z8 = cu.Cyclotomic.zeta_power(8, 1)
    assert z8 * z8 == cu.Cyclotomic.zeta_power(4, 1)
    assert cu._sqrt2() * cu._sqrt2() == 2
    assert cu.Cyclotomic.zeta_power(3, 1) + cu.Cyclotomic.zeta_power(3, 2) == -1
    assert abs(complex(z8) - cmath.exp(1j * cmath.pi / 4)) < 1e-15


def test_cusp_value_trivial():
    assert cu.cusp_value_general(lambda g: 1, 1, R2(0, 0), 1) == 1


def test_cusp_value_matches_pipeline(cusp_matrix, rng):
    # delta_a at level 4 with s = 1/2 reduces to i^R[a] / 256 or 0
    for _ in range(20):
        k = int(rng.integers(2047))
        nz = np.flatnonzero(cusp_matrix.entries[k] != 255)
        a = int(rng.choice(nz)) if rng.random() < 0.7 else int(rng.integers(65536))
        v = cu.cusp_value_general(f"delta:{a}", Fraction(1, 2), ROWS[k], 4)
        b = int(cusp_matrix.entries[k, a])
        expect = 0 if b == 255 else cu.Cyclotomic.zeta_power(4, b)
        assert v * 256 == expect


def test_cusp_value_rank_one_toy():
    def direct(r1):
        total = sum(cmath.exp(1j * cmath.pi * 0.5 * r1 * t * t) for t in range(4))
        return total * 2 ** 0.5 / 4
    for R, r1 in ((R2(2, 0), 2), (R1(1, 0), 1)):
        v = cu.cusp_value_general(lambda g: 1, Fraction(1, 2), R, 4, section=[0])
        assert abs(complex(v) - direct(r1)) < 1e-14


def test_two_step_reduction_on_sections(rng):
    for _ in range(20):
        R = ROWS[int(rng.integers(2047))]
        sec = sorted(int(x) for x in rng.choice(16, 4, replace=False))
        base = rng.integers(0, 2, 16)
        w = rng.integers(-2, 3, 16)

        def phi2(g):
            return 1 + int(np.dot(w, g)) % 3

        direct = cu.cusp_value_general(lambda g: phi2(tuple(x % 2 for x in g)),
                                       Fraction(1, 2), R, 4, section=sec, base=base)
        assert direct == cu.reduced_section_value(phi2, R, sec, base)


def test_cusp_value_budget():
    with pytest.raises(cu.CuspError):
        cu.cusp_value_general(lambda g: 1, 1, R2(0, 0), 2, budget=1000)
    with pytest.raises(cu.CuspError):
        cu.cusp_value_general(42, 1, R2(0, 0), 2)
