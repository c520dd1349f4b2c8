"""Level-two cusps and the exact cusp-value matrix of second-kind thetas.

A characteristic ``a`` is a 16-bit integer.  Bits 0..7 are the f-coordinates
of h1 mod 2, bits 8..15 those of h2, so ``a = code(h1) + 256 * code(h2)``.

For a Hermitian cusp representative R = (r1, r2, r) with r an integral
octave, R[g] = r1 N(h1) + r2 N(h2) + tr(conj(h1) r h2).  The value of the
theta series with characteristic delta_a at the cusp R is, up to a
common factor, i^R[a] when R*a is even and 0 otherwise.  Those powers of
i form the cusp matrix, stored as one byte per entry (0..3 for i^k, 255
for zero), together with one normalizing integer per row,
sum over g mod 2 of (-1)^R[g].
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import hashlib
import itertools
import math
import os
import struct
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .octonion import (CONJ_F, GRAM_S, IntegralOctave, TRIPLE_F, left_mult_f,
                       q_matrix_f)

ZERO_BYTE = 255
N_COLS = 1 << 16
MAGIC = b"OCTT"
FORMAT_VERSION = 1


class CuspError(ValueError):
    pass


# ---- F2 geometry ------------------------------------------------------------

# row b: the 8 bits of b as a {0,1} vector (f-coordinates)
BITS8 = ((np.arange(256)[:, None] >> np.arange(8)) & 1).astype(np.int64)
NORM8 = np.einsum("ni,ij,nj->n", BITS8, GRAM_S, BITS8) // 2
_PACK = 1 << np.arange(8)


def pack_bits(v: np.ndarray) -> np.ndarray:
    """Pack the last axis of a {0,1} array into integer codes."""
    return (np.asarray(v) & 1) @ _PACK[: np.shape(v)[-1]]


@dataclass(frozen=True, order=True)
class IsotropicClass:
    """Nonzero isotropic vector (a, b, c, d, x0..x7) over F2, x in f-coordinates."""

    v: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(t) & 1 for t in self.v)
        if len(v) != 12:
            raise CuspError("isotropic vectors have 12 coordinates")
        if not any(v):
            raise CuspError("the zero vector is not a class")
        if mod2_form(v):
            raise CuspError(f"{v} is not isotropic")
        object.__setattr__(self, "v", v)


def mod2_form(v: Sequence[int]) -> int:
    """a b + c d + N(x) mod 2, x lifted to {0,1} f-coordinates."""
    a, b, c, d = (int(t) & 1 for t in v[:4])
    x = np.array([int(t) & 1 for t in v[4:12]], dtype=np.int64)
    return (a * b + c * d + int(x @ GRAM_S @ x) // 2) % 2


def _isotropic_mask() -> np.ndarray:
    codes = np.arange(1 << 12)
    bits = (codes[:, None] >> np.arange(12)) & 1
    # coordinate k of v sits in bit 11-k so that sorting codes is lexicographic
    bits = bits[:, ::-1]
    q = bits[:, 0] * bits[:, 1] + bits[:, 2] * bits[:, 3] + NORM8[pack_bits(bits[:, 4:])]
    return bits, (q % 2 == 0)


def enumerate_isotropic(include_zero: bool = False) -> list:
    """All isotropic vectors of the mod-2 form, lexicographically ordered."""
    bits, iso = _isotropic_mask()
    out = []
    for row, ok in zip(bits, iso):
        if ok and (include_zero or row.any()):
            t = tuple(int(x) for x in row)
            out.append(IsotropicClass(t) if any(t) else t)
    return out


# ---- cusp representatives ------------------------------------------------------

@dataclass(frozen=True)
class HermitianR:
    r1: int
    r2: int
    r: tuple[int, ...]     # f-coordinates of the octave entry
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        data = (self.r1, self.r2) + self.r
        if len(self.r) != 8:
            raise CuspError("octave entry needs 8 f-coordinates")
        if self.kind == "zero_two":
            if any(x not in (0, 2) for x in data):
                raise CuspError("zero_two entries must lie in {0, 2}")
        elif self.kind == "zero_one":
            if any(x not in (0, 1) for x in data) or not any(data):
                raise CuspError("zero_one entries must lie in {0, 1}, not all zero")
        else:
            raise CuspError(f"unknown kind {self.kind!r}")

    @property
    def octave(self) -> IntegralOctave:
        return IntegralOctave(self.r)

    def bits(self) -> int:
        """10-bit code of the entries divided by their scale."""
        s = 2 if self.kind == "zero_two" else 1
        vals = [self.r1 // s, self.r2 // s] + [x // s for x in self.r]
        return sum(v << k for k, v in enumerate(vals))


def _r_from_bits(bits: int, scale: int, kind: str) -> HermitianR:
    v = [(bits >> k) & 1 for k in range(10)]
    return HermitianR(scale * v[0], scale * v[1], tuple(scale * x for x in v[2:]), kind)


@lru_cache(maxsize=None)
def _cusp_rows() -> tuple[HermitianR, ...]:
    rows = [_r_from_bits(b, 2, "zero_two") for b in range(1024)]
    rows += [_r_from_bits(b, 1, "zero_one") for b in range(1, 1024)]
    return tuple(rows)


def enumerate_cusp_R() -> list[HermitianR]:
    """The 1024 zero_two and 1023 zero_one representatives, in build order."""
    return list(_cusp_rows())


def _norm_f(x) -> int:
    x = np.asarray(x, dtype=np.int64)
    return int(x @ GRAM_S @ x) // 2


def cusp_class(R: HermitianR) -> IsotropicClass:
    """Isotropic class mod 2 attached to a cusp representative.

    Rows sent to the same class have proportional value vectors (after
    dividing by the row denominator they coincide); the test-suite checks
    this on the whole matrix.
    """
    if R.kind == "zero_two":
        rho1, rho2 = R.r1 // 2, R.r2 // 2
        rho = [x // 2 for x in R.r]
        b = (rho1 * rho2 + _norm_f(rho)) % 2
        return IsotropicClass((1, b, rho1, rho2, *rho))
    n = _norm_f(R.r) - R.r1 * R.r2
    if n % 2:
        return IsotropicClass((0, 1, 0, 0) + (0,) * 8)
    return IsotropicClass((0, (n // 2) % 2, R.r1, R.r2, *R.r))


# ---- scalar operations -------------------------------------------------------------

def lift(a: int) -> tuple[np.ndarray, np.ndarray]:
    """{0,1} lift (h1, h2) of a 16-bit characteristic."""
    if not 0 <= int(a) < N_COLS:
        raise CuspError("characteristic must be a 16-bit integer")
    return BITS8[int(a) & 255].copy(), BITS8[int(a) >> 8].copy()


def _as_f(h) -> np.ndarray:
    if isinstance(h, IntegralOctave):
        h = h.fcoords
    return np.asarray(h, dtype=np.int64)


def r_bracket(R: HermitianR, h1, h2) -> int:
    """R[g] = r1 N(h1) + r2 N(h2) + tr(conj(h1) r h2)."""
    h1, h2 = _as_f(h1), _as_f(h2)
    q = q_matrix_f(np.array(R.r))
    return int(R.r1 * _norm_f(h1) + R.r2 * _norm_f(h2) + h1 @ q @ h2)


def r_times(R: HermitianR, h1, h2) -> tuple[np.ndarray, np.ndarray]:
    """R g = (r1 h1 + r h2, conj(r) h1 + r2 h2) in f-coordinates."""
    h1, h2 = _as_f(h1), _as_f(h2)
    r = np.array(R.r, dtype=np.int64)
    return (R.r1 * h1 + left_mult_f(r) @ h2,
            left_mult_f(CONJ_F @ r) @ h1 + R.r2 * h2)


def rg_even(R: HermitianR, g) -> bool:
    u, v = r_times(R, *g)
    return bool(np.all(u % 2 == 0) and np.all(v % 2 == 0))


def numerator_entry(R: HermitianR, a: int) -> int:
    h1, h2 = lift(a)
    if not rg_even(R, (h1, h2)):
        return ZERO_BYTE
    return r_bracket(R, h1, h2) % 4


def denominator_sum(R: HermitianR) -> int:
    """Sum over g mod 2 of (-1)^R[g]."""
    return int(np.sum(1 - 2 * (_bracket_grid(R) & 1)))


def character_sum(R: HermitianR, g) -> int:
    """Sum over h mod 2 of (-1)^(R[g+h] - R[g] - R[h]), by direct summation."""
    h1, h2 = _as_f(g[0]), _as_f(g[1])
    grid = _bracket_grid(R)                 # [k2, k1] -> R[(k1, k2)]
    # R[g + h] over all h (as full integer vectors, not reduced mod 2)
    s1 = h1[None, None, :] + BITS8[None, :, :]
    s2 = h2[None, None, :] + BITS8[:, None, :]
    q = q_matrix_f(np.array(R.r))
    n1 = np.einsum("abi,ij,abj->ab", s1, GRAM_S, s1) // 2
    n2 = np.einsum("abi,ij,abj->ab", s2, GRAM_S, s2) // 2
    full = R.r1 * n1 + R.r2 * n2 + np.einsum("abi,ij,abj->ab", s1, q, s2)
    beta = full - r_bracket(R, h1, h2) - grid
    return int(np.sum(1 - 2 * (beta & 1)))


# ---- the matrix ---------------------------------------------------------------------

def _bracket_grid(R: HermitianR) -> np.ndarray:
    """R[(h1, h2)] for all {0,1} lifts, indexed [code(h2), code(h1)]."""
    q = q_matrix_f(np.array(R.r))
    cross = BITS8 @ q @ BITS8.T          # [h1, h2]
    return R.r1 * NORM8[None, :] + R.r2 * NORM8[:, None] + cross.T


def _even_grid(R: HermitianR) -> np.ndarray:
    r = np.array(R.r, dtype=np.int64)
    lr = left_mult_f(r)
    lrb = left_mult_f(CONJ_F @ r)
    # r1 h1 + r h2 = 0 mod 2  <=>  r1 h1 = r h2 mod 2, componentwise
    c1a = pack_bits(R.r1 * BITS8)
    c1b = pack_bits(BITS8 @ lr.T)
    c2a = pack_bits(BITS8 @ lrb.T)
    c2b = pack_bits(R.r2 * BITS8)
    return (c1a[None, :] == c1b[:, None]) & (c2a[None, :] == c2b[:, None])


def cusp_row(R: HermitianR) -> tuple[np.ndarray, int]:
    br = _bracket_grid(R)
    row = np.where(_even_grid(R), br & 3, ZERO_BYTE).astype(np.uint8).reshape(-1)
    return row, int(np.sum(1 - 2 * (br & 1)))


@dataclass
class CuspMatrix:
    rows: list
    entries: np.ndarray          # (len(rows), 65536) uint8
    denominators: np.ndarray     # (len(rows),) int64

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=np.uint8)
        self.denominators = np.asarray(self.denominators, dtype=np.int64)
        if self.entries.ndim != 2 or self.entries.shape[0] != len(self.denominators):
            raise CuspError(f"bad matrix shape {self.entries.shape}")

    @property
    def shape(self):
        return self.entries.shape

    def to_bytes(self) -> bytes:
        n, m = self.entries.shape
        head = MAGIC + struct.pack("<III", FORMAT_VERSION, n, m)
        return head + self.entries.tobytes(order="C") + self.denominators.astype("<i8").tobytes()

    def sha256(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()

    def write(self, path) -> str:
        data = self.to_bytes()
        with open(path, "wb") as fh:
            fh.write(data)
        return hashlib.sha256(data).hexdigest()

    @classmethod
    def read(cls, path) -> "CuspMatrix":
        with open(path, "rb") as fh:
            head = fh.read(16)
            if len(head) < 16 or head[:4] != MAGIC:
                raise CuspError(f"{path}: not a cusp matrix file")
            version, n, m = struct.unpack("<III", head[4:])
            if version != FORMAT_VERSION:
                raise CuspError(f"{path}: unsupported version {version}")
            body = fh.read(n * m)
            dens = fh.read(8 * n)
            if len(body) != n * m or len(dens) != 8 * n or fh.read(1):
                raise CuspError(f"{path}: truncated or oversized file")
        entries = np.frombuffer(body, dtype=np.uint8).reshape(n, m)
        rows = list(_cusp_rows()) if (n, m) == (2047, N_COLS) else [None] * n
        return cls(rows, entries.copy(), np.frombuffer(dens, dtype="<i8").astype(np.int64))


def thread_count(default: int | None = None) -> int:
    env = os.environ.get("OCTAVIC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise CuspError(f"OCTAVIC_THREADS={env!r} is not an integer") from None
    return default or 1


def build_cusp_matrix(rows: Sequence[HermitianR] | None = None,
                      threads: int | None = None) -> CuspMatrix:
    """Numerator bytes and denominators for every cusp row.

    Rows are independent, so they are spread over a thread pool; each
    result lands at its own row offset and the output does not depend on
    the thread count.
    """
    rows = list(_cusp_rows()) if rows is None else list(rows)
    entries = np.empty((len(rows), N_COLS), dtype=np.uint8)
    dens = np.empty(len(rows), dtype=np.int64)

    def work(k):
        entries[k], dens[k] = cusp_row(rows[k])

    n = thread_count(threads)
    if n == 1:
        for k in range(len(rows)):
            work(k)
    else:
        with ThreadPoolExecutor(n) as pool:
            list(pool.map(work, range(len(rows))))
    return CuspMatrix(rows, entries, dens)


# ---- exact rings ------------------------------------------------------------------------

@dataclass(frozen=True)
class GaussInt:
    re: int
    im: int

    @classmethod
    def i_power(cls, k: int) -> "GaussInt":
        return (cls(1, 0), cls(0, 1), cls(-1, 0), cls(0, -1))[k % 4]

    def __add__(self, o):
        o = _gauss(o)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_gauss(o))

    def __mul__(self, o):
        o = _gauss(o)
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __complex__(self):
        return complex(self.re, self.im)


def _gauss(x) -> GaussInt:
    return x if isinstance(x, GaussInt) else GaussInt(int(x), 0)


def byte_value(b: int) -> GaussInt:
    return GaussInt(0, 0) if b == ZERO_BYTE else GaussInt.i_power(b)


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    from sympy import Poly, Symbol, cyclotomic_poly
    x = Symbol("x")
    # ascending order, monic
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(m, x), x).all_coeffs()))


class Cyclotomic:
    """Element of Q(zeta_M) as a reduced polynomial in zeta_M = exp(2 pi i / M)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable = ()):
        self.m = int(m)
        c = [Fraction(x) for x in coeffs]
        self.coeffs = tuple(_reduce_cyclotomic(c, self.m))

    @classmethod
    def zeta_power(cls, m: int, k: int) -> "Cyclotomic":
        c = [0] * m
        c[k % m] = 1
        return cls(m, c)

    def lift_to(self, m: int) -> "Cyclotomic":
        if m % self.m:
            raise CuspError("can only lift to a multiple of the order")
        step = m // self.m
        c = [Fraction(0)] * m
        for k, v in enumerate(self.coeffs):
            c[k * step] = v
        return Cyclotomic(m, c)

    def _common(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic(self.m, [Fraction(other)])
        m = self.m * other.m // math.gcd(self.m, other.m)
        return self.lift_to(m), other.lift_to(m)

    def __add__(self, other):
        a, b = self._common(other)
        n = max(len(a.coeffs), len(b.coeffs))
        pa = list(a.coeffs) + [0] * (n - len(a.coeffs))
        pb = list(b.coeffs) + [0] * (n - len(b.coeffs))
        return Cyclotomic(a.m, [x + y for x, y in zip(pa, pb)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            return Cyclotomic(self.m, [x * Fraction(other) for x in self.coeffs])
        a, b = self._common(other)
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    out[i + j] += x * y
        return Cyclotomic(a.m, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __complex__(self):
        z = np.exp(2j * np.pi / self.m)
        return complex(sum(float(c) * z ** k for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"Cyclotomic({self.m}, {[str(c) for c in self.coeffs]})"


def _reduce_cyclotomic(c: list, m: int) -> list:
    phi = _cyclotomic_coeffs(m)
    d = len(phi) - 1
    c = list(c)
    for k in range(len(c) - 1, d - 1, -1):
        top = c[k]
        if top:
            for j in range(d + 1):
                c[k - d + j] -= top * phi[j]
    c = c[:d] + [Fraction(0)] * max(0, d - len(c))
    return c


def _sqrt2() -> Cyclotomic:
    return Cyclotomic.zeta_power(8, 1) + Cyclotomic.zeta_power(8, 7)


def _scale_power(s: Fraction, k: int) -> Cyclotomic:
    """s^(-k/2) as an exact cyclotomic number, where this is possible."""
    s = Fraction(s)
    if s <= 0:
        raise CuspError("s must be positive")
    base = s ** -(k // 2)
    if k % 2 == 0:
        return Cyclotomic(1, [base])
    inv = 1 / s
    num, den = math.isqrt(inv.numerator), math.isqrt(inv.denominator)
    if num * num == inv.numerator and den * den == inv.denominator:
        return Cyclotomic(1, [base * Fraction(num, den)])
    # 1/s = 2 q^2 with q rational
    half = inv / 2
    num, den = math.isqrt(half.numerator), math.isqrt(half.denominator)
    if num * num == half.numerator and den * den == half.denominator:
        return _sqrt2() * (base * Fraction(num, den))
    raise CuspError(f"s^(-1/2) is not available for s = {s}")


# ---- direct Gauss-type sums for cross-checks ----------------------------------

@dataclass(frozen=True)
class RationalR:
    """Hermitian data with rational entries; octave given in f-coordinates."""

    r1: Fraction
    r2: Fraction
    r: tuple[Fraction, ...]

    @classmethod
    def from_cusp(cls, R: HermitianR) -> "RationalR":
        return cls(Fraction(R.r1), Fraction(R.r2), tuple(Fraction(x) for x in R.r))

    def scaled(self, c) -> "RationalR":
        c = Fraction(c)
        return RationalR(self.r1 * c, self.r2 * c, tuple(x * c for x in self.r))


def _bracket_array(R: RationalR, g: np.ndarray) -> tuple[np.ndarray, int]:
    """(D * R[g], D) with D the common denominator, for rows g of length 16."""
    vals = [R.r1, R.r2, *R.r]
    d = 1
    for v in vals:
        d = d * v.denominator // math.gcd(d, v.denominator)
    ints = [int(v * d) for v in vals]
    h1, h2 = g[:, :8], g[:, 8:]
    n1 = np.einsum("ni,ij,nj->n", h1, GRAM_S, h1) // 2
    n2 = np.einsum("ni,ij,nj->n", h2, GRAM_S, h2) // 2
    q = np.einsum("k,ikj->ij", np.array(ints[2:], dtype=np.int64), TRIPLE_F)
    cross = np.einsum("ni,ij,nj->n", h1, q, h2)
    return ints[0] * n1 + ints[1] * n2 + cross, d


def _delta_support(a: int, n: int) -> np.ndarray:
    h1, h2 = lift(a)
    base = np.concatenate([h1, h2])
    if n == 2:
        return base[None, :]
    half = n // 2
    if half ** 16 > 1 << 20:
        raise CuspError("support too large")
    offs = (np.arange(half ** 16)[:, None] // half ** np.arange(16)) % half
    return base[None, :] + 2 * offs


def cusp_value_general(phi, s, R, n: int, budget: int = 1 << 18,
                       section: Sequence[int] | None = None,
                       base: Sequence[int] | None = None) -> Cyclotomic:
    """s^(-k/2) n^(-k) sum over g mod n of phi(g) exp(pi i s R[g]).

    ``phi`` is either a callable on residue tuples (all n^k residues are
    visited), a mapping from residue tuples to coefficients (only its
    support is visited) or the string ``"delta:<a>"`` for the indicator of
    the residues reducing to the characteristic a mod 2.  With ``section``
    only those k coordinates vary, the others are fixed to ``base``
    (default zero); without it k = 16.

    The term count may not exceed ``budget``.
    """
    if not isinstance(R, RationalR):
        R = RationalR.from_cusp(R)
    s = Fraction(s)
    coords = list(range(16)) if section is None else list(section)
    k = len(coords)
    fixed = np.zeros(16, dtype=np.int64) if base is None else np.asarray(base, dtype=np.int64)

    if isinstance(phi, str) and phi.startswith("delta:"):
        if section is not None:
            raise CuspError("delta support is only available without a section")
        pts = _delta_support(int(phi.split(":", 1)[1]), n)
        weights = None
    elif isinstance(phi, Mapping):
        pts = np.array([list(key) for key in phi], dtype=np.int64).reshape(-1, 16)
        weights = [Fraction(phi[tuple(int(x) for x in p)]) for p in pts]
    elif callable(phi):
        if n ** k > budget:
            raise CuspError(f"{n}^{k} terms exceed the budget {budget}")
        grid = (np.arange(n ** k)[:, None] // n ** np.arange(k)) % n
        pts = np.repeat(fixed[None, :], len(grid), axis=0)
        pts[:, coords] = grid
        weights = [Fraction(phi(tuple(int(x) for x in p))) for p in pts]
    else:
        raise CuspError("phi must be a callable, a mapping or 'delta:<a>'")
    if len(pts) > budget:
        raise CuspError(f"{len(pts)} terms exceed the budget {budget}")

    br, d = _bracket_array(R, pts)
    # exp(pi i s R[g]) = zeta_M^(s_num * D R[g]) with M = 2 * s_den * D
    m = 2 * s.denominator * d
    expo = (s.numerator * br) % m
    if weights is None:
        counts = np.bincount(expo, minlength=m)
        coeffs = [Fraction(int(c)) for c in counts]
    else:
        coeffs = [Fraction(0)] * m
        for e, w in zip(expo.tolist(), weights):
            coeffs[e] += w
    total = Cyclotomic(m, coeffs)
    return total * _scale_power(s, k) * Fraction(1, n ** k)


def reduced_section_value(phi2: Callable, R: HermitianR, section: Sequence[int],
                          base: Sequence[int] | None = None) -> Cyclotomic:
    """The two-step reduction of sum over g mod 4 (section only) of
    phi2(g mod 2) i^R[g]: each residue a mod 2 contributes
    2^k i^R[a] when the pairing of a with every section coordinate is
    even and 0 otherwise."""
    k = len(section)
    fixed = np.zeros(16, dtype=np.int64) if base is None else np.asarray(base, dtype=np.int64) % 2
    total = GaussInt(0, 0)
    for bits in itertools.product((0, 1), repeat=k):
        g = fixed.copy()
        g[list(section)] = bits
        w = phi2(tuple(int(x) for x in g))
        if not w:
            continue
        h1, h2 = g[:8], g[8:]
        rg = r_bracket(R, h1, h2)
        ok = True
        for c in section:
            e = np.zeros(16, dtype=np.int64)
            e[c] = 1
            pair = r_bracket(R, h1 + e[:8], h2 + e[8:]) - rg - r_bracket(R, e[:8], e[8:])
            if pair % 2:
                ok = False
                break
        if ok:
            total = total + GaussInt.i_power(rg) * (int(w) << k)
    val = Cyclotomic(4, [total.re, total.im])
    return val * _scale_power(Fraction(1, 2), k) * Fraction(1, 4 ** k)
