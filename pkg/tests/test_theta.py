import numpy as np
import pytest

from octavic import embedding as em
from octavic import theta_numeric as th
from octavic.octonion import GRAM_S


def test_in_h10_examples():
    assert th.in_h10(em.OrthPoint(1j, 1j, np.zeros(8)))
    assert not th.in_h10(em.OrthPoint(1j, 1j, 1j * np.eye(8)[0]))
    assert not th.in_h10(em.OrthPoint(-1j, 1j, np.zeros(8)))


def test_box_and_shell_enumerations_agree():
    for n in (1, 2, 3):
        for res in (None, np.array([1, 0, 0, 0, 1, 0, 0, 0])):
            a = {tuple(v) for v in th.box_vectors(n, res)}
            b = {tuple(v) for v in th.shell_vectors(n, res)}
            assert a == b
    assert len(th.box_vectors(2)) == 1 + 240 + 2160


def test_siegel_point_validation():
    with pytest.raises(th.ThetaError):
        th.SiegelPoint(np.eye(16))
    z = 1j * np.eye(16)
    z[0, 1] = 1
    with pytest.raises(th.ThetaError):
        th.SiegelPoint(z)
    with pytest.raises(th.ThetaError):
        th.TruncationBound(0, 3)


def test_large_height_limit():
    z = 20j * np.kron(np.eye(2), GRAM_S)
    b = th.TruncationBound(2, 2)
    assert abs(th.theta_siegel(0, z, b) - 1) < 1e-10
    assert abs(th.theta_siegel(0x0101, z, b)) < 1e-10
    zt = em.OrthPoint(20j, 20j, np.zeros(8))
    assert abs(th.theta_restricted(0, zt, b) - 1) < 1e-10
    assert abs(th.theta_restricted(0x8003, zt, b)) < 1e-10


def test_restriction_at_diagonal_point():
    z = em.OrthPoint(2j, 2j, np.zeros(8))
    b = th.TruncationBound(4, 4)
    r = th.theta_restricted(0, z, b)
    s = th.theta_siegel(0, em.j_point(z), b)
    assert abs(r - s) < 1e-8
    # first correction: h = 2x with x one of the 240 roots, in either slot
    assert abs(r - 1 - 2 * 240 * np.exp(-8 * np.pi)) < 1e-12


def test_doubling_the_bound():
    for a in (0, 0x0301, 0x1e00):
        z = em.OrthPoint(3j, 3j, np.zeros(8))
        small = th.theta_restricted(a, z, th.TruncationBound(2, 2), with_tail=True)
        big = th.theta_restricted(a, z, th.TruncationBound(4, 4))
        assert abs(small.value - big) < 1e-10
        assert abs(small.value - big) <= small.tail_bound


def test_tail_bound_shrinks():
    y = 2 * np.kron(np.eye(2), GRAM_S)
    t1 = th.tail_bound(y, th.TruncationBound(1, 1))
    t2 = th.tail_bound(y, th.TruncationBound(3, 3))
    assert 0 < t2 < t1
    assert th.e8_shell_count(1) == 240 and th.e8_shell_count(2) == 2160


def test_siegel_action_basics(rng):
    z = em.j_point(em.random_orth_point(rng))
    assert np.abs(th.siegel_action(np.eye(32), z) - z).max() < 1e-12
    inv = np.block([[np.zeros((16, 16)), -np.eye(16)], [np.eye(16), np.zeros((16, 16))]])
    w = th.siegel_action(inv, z)
    assert np.abs(w + np.linalg.inv(z)).max() < 1e-9
    assert np.abs(w - w.T).max() < 1e-10
    assert np.linalg.eigvalsh(w.imag).min() > 0
    sing = np.zeros((32, 32))
    sing[:16, :16] = np.eye(16)
    with pytest.raises(th.ThetaError):
        th.siegel_action(sing, z)


def test_equivariance_identity_and_generators(rng):
    ident = em.GeneratorSpec("identity")
    for _ in range(5):
        assert th.equivariance_residual(ident, em.random_orth_point(rng)) < 1e-12
    for spec in em.generator_family():
        for _ in range(3):
            assert th.equivariance_residual(spec, em.random_orth_point(rng)) < 1e-9


def test_wrong_calibration_is_detected(rng):
    spec = em.GeneratorSpec.translation_upper(0, 0, (0, 0, 0, 0, 0, 1, 0, 0))
    z = em.random_orth_point(rng)
    for cal in ("identity", "neg", "neg_conj"):
        try:
            r = th.equivariance_residual(spec, z, cal)
        except em.EmbeddingError:
            r = np.inf
        assert r > 1e-3


def test_calibration_discovery():
    assert th.discover_calibration(seed=5) == em.DEFAULT_CALIBRATION == "conj"
