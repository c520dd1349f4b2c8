"""Truncated theta series on the tube domain and on the degree-16 half-space.

theta_siegel(a, Z)      = sum over g in Z^16, g = a mod 2, of exp(pi i Z[g] / 2)
theta_restricted(a, z)  = sum over integral octave pairs h = a mod 2 of
                          exp(pi i (N(h1) z1 + N(h2) z2 + tr(conj(h1) zf h2)))

Both sums run over the same index set, pairs of lattice vectors with
N(h1) <= max_norm1 and N(h2) <= max_norm2, so at a point Z = j(z) they
agree up to roundoff.  The Siegel side enumerates boxes of Z^8 and
filters by S; the restricted side walks the norm shells and multiplies
octaves in e-coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.linalg import eigh

from .cusps import lift
from .embedding import (CALIBRATIONS, DEFAULT_CALIBRATION, EmbeddingError, OrthPoint,
                        generator_data, generator_family, j_point, orth_action,
                        random_orth_point)
from .octonion import (GRAM_S, MULT_TENSOR, e_array_from_f, oct_conj_array,
                       oct_mul_array, vectors_by_norm)

_S = GRAM_S.astype(float)
_SINV_DIAG = np.diag(np.linalg.inv(_S))


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class TruncationBound:
    max_norm1: int = 6
    max_norm2: int = 6

    def __post_init__(self):
        if self.max_norm1 < 1 or self.max_norm2 < 1:
            raise ThetaError("norm cutoffs must be positive")


@dataclass(frozen=True)
class SiegelPoint:
    Z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.Z, dtype=complex)
        if z.shape != (16, 16):
            raise ThetaError("expected a 16x16 matrix")
        if np.abs(z - z.T).max() > 1e-12 * max(1.0, np.abs(z).max()):
            raise ThetaError("matrix is not symmetric")
        y = (z.imag + z.imag.T) / 2
        if np.linalg.eigvalsh(y).min() <= 0:
            raise ThetaError("imaginary part is not positive definite")
        object.__setattr__(self, "Z", (z + z.T) / 2)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    tail_bound: float
    terms: int


def in_h10(z: OrthPoint) -> bool:
    return z.is_valid()


# ---- lattice points ----------------------------------------------------------

def box_vectors(max_norm: int, residue=None) -> np.ndarray:
    """Vectors x in Z^8 with x'Sx/2 <= max_norm, by box enumeration.

    ``residue`` restricts to x = residue mod 2.  The box uses the
    coordinate bounds x_i^2 <= 2 n (S^-1)_ii; enumeration runs in slices
    over the first coordinate to keep memory flat.
    """
    widths = np.floor(np.sqrt(2 * max_norm * _SINV_DIAG) + 1e-9).astype(int)
    ranges = []
    for k, w in enumerate(widths):
        r = np.arange(-w, w + 1)
        if residue is not None:
            r = r[(r - int(residue[k])) % 2 == 0]
        ranges.append(r)
    tail = np.stack(np.meshgrid(*ranges[1:], indexing="ij"), -1).reshape(-1, 7)
    out = []
    for x0 in ranges[0]:
        pts = np.concatenate([np.full((len(tail), 1), x0), tail], axis=1)
        q = np.einsum("ni,ij,nj->n", pts, GRAM_S, pts)
        out.append(pts[q <= 2 * max_norm])
    return np.concatenate(out)


def shell_vectors(max_norm: int, residue=None) -> np.ndarray:
    """Same set as box_vectors, assembled from the norm shells."""
    pts = np.concatenate([vectors_by_norm(n) for n in range(max_norm + 1)])
    if residue is not None:
        pts = pts[((pts - np.asarray(residue)) % 2 == 0).all(1)]
    return pts


# ---- tail estimate --------------------------------------------------------------

def e8_shell_count(n: int) -> int:
    if n == 0:
        return 1
    return 240 * sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def tail_bound(y: np.ndarray, bound: TruncationBound, max_shell: int = 400) -> float:
    """Upper bound for the absolute sum of the omitted terms.

    Im Z[g] >= mu g' diag(S, S) g with mu the smallest eigenvalue of Y
    relative to diag(S, S), so the term of a pair with norms (n1, n2) is at
    most q^(n1+n2) with q = exp(-pi mu).
    """
    s2 = np.kron(np.eye(2), _S)
    mu = float(eigh((y + y.T) / 2, s2, eigvals_only=True).min())
    if mu <= 0:
        return math.inf
    q = math.exp(-math.pi * mu)
    full = head1 = head2 = 0.0
    for n in range(max_shell):
        t = e8_shell_count(n) * q ** n
        full += t
        if n <= bound.max_norm1:
            head1 += t
        if n <= bound.max_norm2:
            head2 += t
        if n > max(bound.max_norm1, bound.max_norm2) and t < 1e-300:
            break
    return max(full * full - head1 * head2, 0.0)


# ---- the two sums ---------------------------------------------------------------------

def _char_pair(a) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(a, (int, np.integer)):
        return lift(int(a))
    a = np.asarray(a, dtype=np.int64) % 2
    return a[:8], a[8:]


def theta_siegel(a, Z, bound: TruncationBound = TruncationBound(),
                 with_tail: bool = False):
    """Truncated sum of exp(pi i Z[g]/2) over g = a mod 2 in the box."""
    if not isinstance(Z, SiegelPoint):
        Z = SiegelPoint(Z)
    z = Z.Z
    r1, r2 = _char_pair(a)
    g1 = box_vectors(bound.max_norm1, r1).astype(float)
    g2 = box_vectors(bound.max_norm2, r2).astype(float)
    q1 = np.einsum("ni,ij,nj->n", g1, z[:8, :8], g1)
    q2 = np.einsum("ni,ij,nj->n", g2, z[8:, 8:], g2)
    cross = g1 @ z[:8, 8:] @ g2.T
    expo = (q1[:, None] + q2[None, :] + 2 * cross) * (0.5j * np.pi)
    val = complex(np.exp(expo).sum())
    if not with_tail:
        return val
    return ThetaValue(val, tail_bound(z.imag, bound), len(g1) * len(g2))


_TRACE_FORM = 2.0 * MULT_TENSOR[:, :, 0]


def theta_restricted(a, z: OrthPoint, bound: TruncationBound = TruncationBound(),
                     with_tail: bool = False):
    """Truncated restricted sum over integral octave pairs of class a."""
    if not in_h10(z):
        raise ThetaError("point is not in the tube domain")
    r1, r2 = _char_pair(a)
    h1f = shell_vectors(bound.max_norm1, r1)
    h2f = shell_vectors(bound.max_norm2, r2)
    n1 = np.einsum("ni,ij,nj->n", h1f, GRAM_S, h1f) / 2
    n2 = np.einsum("ni,ij,nj->n", h2f, GRAM_S, h2f) / 2
    x = oct_conj_array(e_array_from_f(h1f)).astype(complex)
    w = np.broadcast_to(z.zf, x.shape)
    xw = oct_mul_array(x, w)
    tr = xw @ _TRACE_FORM @ e_array_from_f(h2f).T
    expo = (n1[:, None] * z.z1 + n2[None, :] * z.z2 + tr) * (1j * np.pi)
    val = complex(np.exp(expo).sum())
    if not with_tail:
        return val
    y = j_point(z).imag
    return ThetaValue(val, tail_bound(y, bound), len(h1f) * len(h2f))


# ---- the symplectic action and equivariance --------------------------------------

def siegel_action(m, Z, cond_limit: float = 1e12) -> np.ndarray:
    """(AZ + B)(CZ + D)^-1, symmetrized."""
    z = Z.Z if isinstance(Z, SiegelPoint) else np.asarray(Z, dtype=complex)
    n = z.shape[0]
    mf = np.asarray(m, dtype=float)
    if mf.shape != (2 * n, 2 * n):
        raise ThetaError("matrix size does not match the point")
    a, b, c, d = mf[:n, :n], mf[:n, n:], mf[n:, :n], mf[n:, n:]
    den = c @ z + d
    if np.linalg.cond(den) > cond_limit:
        raise ThetaError("CZ + D is numerically singular")
    out = np.linalg.solve(den.T, (a @ z + b).T).T
    return (out + out.T) / 2


def equivariance_residual(spec, z: OrthPoint, calibration: str = DEFAULT_CALIBRATION) -> float:
    """max |J(g)<j(z)> - j(g z)| over all entries."""
    data = generator_data(spec)
    lhs = siegel_action(data.symplectic, j_point(z))
    w, _ = orth_action(data.orth, z, calibration)
    return float(np.abs(lhs - j_point(w)).max())


def discover_calibration(seed: int = 0, samples: int = 24, tol: float = 1e-9) -> str:
    """Find the chart under which the point map commutes with the actions."""
    rng = np.random.default_rng(seed)
    specs = generator_family()
    points = [random_orth_point(rng) for _ in range(samples)]
    good = []
    for name in CALIBRATIONS:
        worst = 0.0
        for k, z in enumerate(points):
            try:
                worst = max(worst, equivariance_residual(specs[k % len(specs)], z, name))
            except (EmbeddingError, ThetaError):
                worst = math.inf
            if worst > tol:
                break
        if worst <= tol:
            good.append(name)
    if len(good) != 1:
        raise ThetaError(f"calibration is not unique: {good}")
    return good[0]
