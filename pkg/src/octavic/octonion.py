"""Exact octave (octonion) arithmetic and the integral order O(Z).

Octaves are stored by their coordinates over e0..e7 as ``Fraction``s.
Integral octaves are stored by integer coordinates over the basis f0..f7
of the maximal order; their norm form is a copy of E8.

Besides the exact scalar types this module exposes integer lookup tables
(structure constants in the f-basis, conjugation, trace, triple traces)
that the batched code paths in :mod:`octavic.cusps` and
:mod:`octavic.theta` use.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
import math
from typing import Iterable, Sequence

import numpy as np

# Row i, column j holds e_i * e_j as (sign, index).
_TABLE_TEXT = """
 e0  e1  e2  e3  e4  e5  e6  e7
 e1 -e0  e4  e7 -e2  e6 -e5 -e3
 e2 -e4 -e0  e5  e1 -e3  e7 -e6
 e3 -e7 -e5 -e0  e6  e2 -e4  e1
 e4  e2 -e1 -e6 -e0  e7  e3 -e5
 e5 -e6  e3 -e2 -e7 -e0  e1  e4
 e6  e5 -e7  e4 -e3 -e1 -e0  e2
 e7  e3  e6 -e1  e5 -e4 -e2 -e0
"""


def _parse_table(text: str) -> tuple[tuple[tuple[int, int], ...], ...]:
    rows = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            sign = -1 if tok.startswith("-") else 1
            row.append((sign, int(tok[-1])))
        rows.append(tuple(row))
    return tuple(rows)


MULT_TABLE = _parse_table(_TABLE_TEXT)

# MULT_TENSOR[i, j, k] = coefficient of e_k in e_i * e_j
MULT_TENSOR = np.zeros((8, 8, 8), dtype=np.int64)
for _i, _row in enumerate(MULT_TABLE):
    for _j, (_s, _k) in enumerate(_row):
        MULT_TENSOR[_i, _j, _k] = _s

_h = Fraction(1, 2)
# rows: f-basis vectors in e-coordinates
F_ROWS: tuple[tuple[Fraction, ...], ...] = (
    (1, 0, 0, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0),
    (0, _h, _h, _h, -_h, 0, 0, 0),
    (-_h, -_h, 0, 0, -_h, _h, 0, 0),
    (-_h, _h, -_h, 0, 0, 0, _h, 0),
    (-_h, 0, _h, 0, _h, 0, 0, _h),
)
F_ROWS = tuple(tuple(Fraction(c) for c in row) for row in F_ROWS)

# 2F is integral; handy for exact work with numpy integer arrays.
F2_INT = np.array([[int(2 * c) for c in row] for row in F_ROWS], dtype=np.int64)
F_FLOAT = F2_INT / 2.0


def _invert_fraction_matrix(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


# E_TO_F[k][i]: f-coordinate k of e_i, i.e. the matrix (F')^-1.
_FT = [[F_ROWS[j][i] for j in range(8)] for i in range(8)]
E_TO_F = _invert_fraction_matrix(_FT)
assert all(c.denominator == 1 for row in E_TO_F for c in row)
E_TO_F_INT = np.array([[int(c) for c in row] for row in E_TO_F], dtype=np.int64)


class Octave:
    """An element of the octaves with exact rational e-coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable = (0,) * 8):
        c = tuple(Fraction(x) for x in coords)
        if len(c) != 8:
            raise ValueError("an octave has 8 coordinates")
        self.coords = c

    @classmethod
    def basis(cls, i: int) -> "Octave":
        return cls(1 if k == i else 0 for k in range(8))

    @classmethod
    def from_f(cls, fcoords: Iterable[int]) -> "Octave":
        return cls(basis_convert(tuple(fcoords), "f_to_e"))

    def __repr__(self) -> str:
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coords) if c]
        return "Octave(" + (" + ".join(terms) or "0") + ")"

    def __eq__(self, other) -> bool:
        if isinstance(other, Octave):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: "Octave") -> "Octave":
        return Octave(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Octave") -> "Octave":
        return Octave(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Octave":
        return Octave(-a for a in self.coords)

    def __mul__(self, other):
        if isinstance(other, Octave):
            return oct_mul(self, other)
        return Octave(a * Fraction(other) for a in self.coords)

    def __rmul__(self, other):
        return Octave(Fraction(other) * a for a in self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def conj(self) -> "Octave":
        return oct_conj(self)

    def norm(self) -> Fraction:
        return oct_norm(self)

    def trace(self) -> Fraction:
        return oct_trace(self)

    def fcoords(self) -> tuple[Fraction, ...]:
        return basis_convert(self.coords, "e_to_f")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.fcoords())


class IntegralOctave:
    """An element of O(Z), stored by integer coordinates over f0..f7."""

    __slots__ = ("fcoords",)

    def __init__(self, fcoords: Iterable[int]):
        c = tuple(int(x) for x in fcoords)
        if len(c) != 8:
            raise ValueError("an integral octave has 8 coordinates")
        self.fcoords = c

    @classmethod
    def basis(cls, i: int) -> "IntegralOctave":
        return cls(1 if k == i else 0 for k in range(8))

    @classmethod
    def from_octave(cls, x: Octave) -> "IntegralOctave":
        f = x.fcoords()
        if any(c.denominator != 1 for c in f):
            raise ValueError(f"{x!r} is not integral")
        return cls(int(c) for c in f)

    def to_octave(self) -> Octave:
        return Octave.from_f(self.fcoords)

    def __repr__(self) -> str:
        return f"IntegralOctave({list(self.fcoords)})"

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegralOctave):
            return self.fcoords == other.fcoords
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.fcoords)

    def __add__(self, other: "IntegralOctave") -> "IntegralOctave":
        return IntegralOctave(a + b for a, b in zip(self.fcoords, other.fcoords))

    def __sub__(self, other: "IntegralOctave") -> "IntegralOctave":
        return IntegralOctave(a - b for a, b in zip(self.fcoords, other.fcoords))

    def __neg__(self) -> "IntegralOctave":
        return IntegralOctave(-a for a in self.fcoords)

    def __mul__(self, other):
        if isinstance(other, IntegralOctave):
            v = fmul(np.array(self.fcoords), np.array(other.fcoords))
            return IntegralOctave(v.tolist())
        return IntegralOctave(a * int(other) for a in self.fcoords)

    def __rmul__(self, other):
        return IntegralOctave(int(other) * a for a in self.fcoords)

    def conj(self) -> "IntegralOctave":
        return IntegralOctave((CONJ_F @ np.array(self.fcoords)).tolist())

    def norm(self) -> int:
        v = np.array(self.fcoords)
        return int(v @ GRAM_S @ v) // 2

    def trace(self) -> int:
        return int(TRACE_F @ np.array(self.fcoords))


def oct_mul(a: Octave, b: Octave) -> Octave:
    out = [Fraction(0)] * 8
    for i, x in enumerate(a.coords):
        if not x:
            continue
        row = MULT_TABLE[i]
        for j, y in enumerate(b.coords):
            if y:
                s, k = row[j]
                out[k] += s * x * y
    return Octave(out)


def oct_conj(x: Octave) -> Octave:
    c = x.coords
    return Octave((c[0],) + tuple(-t for t in c[1:]))


def oct_norm(x: Octave) -> Fraction:
    return sum((c * c for c in x.coords), Fraction(0))


def oct_trace(x: Octave) -> Fraction:
    return 2 * x.coords[0]


def triple_trace(a: Octave, b: Octave, c: Octave) -> Fraction:
    """tr((a*b)*c), which coincides with tr(a*(b*c))."""
    return oct_trace(oct_mul(oct_mul(a, b), c))


def basis_convert(coords: Sequence, direction: str) -> tuple[Fraction, ...]:
    """Change coordinates between the e-basis and the f-basis.

    ``direction`` is ``"e_to_f"`` or ``"f_to_e"``.
    """
    v = [Fraction(c) for c in coords]
    if direction == "f_to_e":
        return tuple(sum((v[j] * F_ROWS[j][i] for j in range(8)), Fraction(0))
                     for i in range(8))
    if direction == "e_to_f":
        return tuple(sum((E_TO_F[k][i] * v[i] for i in range(8)), Fraction(0))
                     for k in range(8))
    raise ValueError(f"unknown direction {direction!r}")


def f_basis() -> list[Octave]:
    return [Octave(row) for row in F_ROWS]


def gram_s() -> np.ndarray:
    """The Gram matrix S_ij = tr(conj(f_i) * f_j) = 2FF' as an int array."""
    fs = f_basis()
    s = [[oct_trace(oct_mul(oct_conj(fi), fj)) for fj in fs] for fi in fs]
    return np.array([[int(x) for x in row] for row in s], dtype=np.int64)


# ---- integer tables in the f-basis ---------------------------------------

def _f_structure_constants() -> np.ndarray:
    fs = f_basis()
    out = np.zeros((8, 8, 8), dtype=np.int64)
    for i, fi in enumerate(fs):
        for j, fj in enumerate(fs):
            c = oct_mul(fi, fj).fcoords()
            if any(t.denominator != 1 for t in c):
                raise AssertionError("O(Z) is not closed under multiplication")
            out[i, j] = [int(t) for t in c]
    return out


GRAM_S = gram_s()
STRUCT_F = _f_structure_constants()
CONJ_F = np.array([[int(t) for t in oct_conj(f).fcoords()] for f in f_basis()],
                  dtype=np.int64).T
TRACE_F = np.array([int(oct_trace(f)) for f in f_basis()], dtype=np.int64)


def fmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of integral octaves given by f-coordinates (batched on the
    leading axes)."""
    return np.einsum("...i,...j,ijk->...k", a, b, STRUCT_F)


def _triple_table() -> np.ndarray:
    eye = np.eye(8, dtype=np.int64)
    out = np.zeros((8, 8, 8), dtype=np.int64)
    for i in range(8):
        ci = CONJ_F @ eye[i]
        for k in range(8):
            x = fmul(ci, eye[k])
            for j in range(8):
                out[i, k, j] = TRACE_F @ fmul(x, eye[j])
    return out


# TRIPLE_F[i, k, j] = tr(conj(f_i) * f_k * f_j)
TRIPLE_F = _triple_table()


def left_mult_f(r: np.ndarray) -> np.ndarray:
    """Integer matrix of x -> r*x in f-coordinates."""
    return np.einsum("i,ijk->kj", r, STRUCT_F)


def q_matrix_f(r: np.ndarray) -> np.ndarray:
    """(tr(conj(f_i) * r * f_j))_ij for an integral octave r in f-coordinates."""
    return np.einsum("k,ikj->ij", np.asarray(r, dtype=np.int64), TRIPLE_F)


# ---- enumeration -----------------------------------------------------------

@lru_cache(maxsize=None)
def _enumerate_by_norm_cached(n: int) -> tuple[tuple[int, ...], ...]:
    if n < 0:
        raise ValueError("norm must be nonnegative")
    if n == 0:
        return ((0,) * 8,)
    s = GRAM_S
    sinv = np.linalg.inv(s.astype(float))
    # x'Sx = 2n forces x_i^2 <= 2n (S^-1)_ii
    bound = int(math.floor(math.sqrt(2 * n * sinv.diagonal().max()) + 1e-9))
    target = 2 * n

    # min over the unfixed tail of x'Sx given the fixed head is the head's
    # quadratic form under the Schur complement
    schur = []
    for k in range(1, 8):
        a = s[:k, :k].astype(float)
        b = s[:k, k:].astype(float)
        c = s[k:, k:].astype(float)
        schur.append(a - b @ np.linalg.solve(c, b.T))
    schur.append(s.astype(float))

    rng = np.arange(-bound, bound + 1)
    prefixes = rng[:, None]
    for k in range(1, 9):
        q = np.einsum("ni,ij,nj->n", prefixes, schur[k - 1], prefixes)
        prefixes = prefixes[q <= target + 1e-7]
        if k == 8:
            break
        prefixes = np.concatenate(
            [np.repeat(prefixes, len(rng), axis=0),
             np.tile(rng, len(prefixes))[:, None]], axis=1)
    exact = np.einsum("ni,ij,nj->n", prefixes, s, prefixes)
    hits = prefixes[exact == target]
    hits = hits[np.lexsort(hits.T[::-1])]
    return tuple(tuple(int(t) for t in row) for row in hits)


def enumerate_by_norm(n: int) -> list[IntegralOctave]:
    """All integral octaves of norm exactly ``n`` in lexicographic f-order."""
    return [IntegralOctave(v) for v in _enumerate_by_norm_cached(n)]


def vectors_by_norm(n: int) -> np.ndarray:
    """Same as :func:`enumerate_by_norm` as an ``(count, 8)`` int array."""
    return np.array(_enumerate_by_norm_cached(n), dtype=np.int64).reshape(-1, 8)


def e_array_from_f(fcoords: np.ndarray) -> np.ndarray:
    """Float e-coordinates for a batch of f-coordinate rows."""
    return np.asarray(fcoords) @ F_FLOAT


def oct_mul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Batched product of (possibly complex) octaves in e-coordinates."""
    return np.einsum("...i,...j,ijk->...k", a, b, MULT_TENSOR)


def oct_conj_array(a: np.ndarray) -> np.ndarray:
    out = np.array(a, copy=True)
    out[..., 1:] *= -1
    return out
