"""Rank and span membership of cusp matrices over prime fields.

Entries are powers of i (or zero).  Modulo a prime p = 1 mod 4 the unit i
becomes a square root of -1, so the Gaussian-integer matrix reduces to a
matrix over F_p whose rank bounds the complex rank from below.

The elimination keeps a fully reduced basis of the column space in a
float64 array.  Every entry is a residue below p, so a dot product of
length k stays below k (p-1)^2; for k <= 2047 and p < 2^21 that is under
2^53 and the BLAS products are exact.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
import json
import math
import time
from typing import Sequence

import numpy as np

from .cusps import ZERO_BYTE

MAX_PRIME = 1 << 21
DEFAULT_PRIMES = (10009, 1000033)


class LinAlgError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, math.isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int
    sqrt_minus_one: int = field(init=False)

    def __post_init__(self):
        p = int(self.p)
        if not _is_prime(p):
            raise LinAlgError(f"{p} is not prime")
        if p % 4 != 1:
            raise LinAlgError(f"{p} is not 1 mod 4, so -1 has no square root")
        if p >= MAX_PRIME:
            raise LinAlgError(f"{p} is too large for exact float64 elimination")
        for c in range(2, p):
            s = pow(c, (p - 1) // 4, p)
            if s * s % p == p - 1:
                break
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "sqrt_minus_one", min(s, p - s))

    def lut(self) -> np.ndarray:
        """Residues of i^0..i^3, indexed by entry byte."""
        p, s = self.p, self.sqrt_minus_one
        return np.array([1, s, p - 1, p - s], dtype=np.int64)


def entry_mod_p(byte: int, fld: PrimeField) -> int:
    if byte == ZERO_BYTE:
        return 0
    if byte not in (0, 1, 2, 3):
        raise LinAlgError(f"invalid entry byte {byte}")
    return int(fld.lut()[byte])


def bytes_mod_p(a: np.ndarray, fld: PrimeField) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    bad = (a > 3) & (a != ZERO_BYTE)
    if bad.any():
        raise LinAlgError(f"invalid entry byte {int(a[bad][0])}")
    out = np.zeros(a.shape, dtype=np.float64)
    nz = a != ZERO_BYTE
    out[nz] = fld.lut()[a[nz]]
    return out


@dataclass
class ColumnDedupe:
    columns: np.ndarray       # (rows, k) distinct columns
    first_index: np.ndarray   # original index of each distinct column
    inverse: np.ndarray       # original column j equals columns[:, inverse[j]]
    counts: np.ndarray

    def restore(self) -> np.ndarray:
        return self.columns[:, self.inverse]

    def stats(self) -> dict:
        return {"distinct": int(self.columns.shape[1]), "total": int(len(self.inverse)),
                "max_multiplicity": int(self.counts.max()) if len(self.counts) else 0}


def dedupe_columns(entries: np.ndarray) -> ColumnDedupe:
    """Exact column dedupe by hashing each column's byte string."""
    entries = np.asarray(entries, dtype=np.uint8)
    n, m = entries.shape
    if m == 0:
        return ColumnDedupe(entries.copy(), np.zeros(0, int), np.zeros(0, int), np.zeros(0, int))
    cols = np.ascontiguousarray(entries.T)
    keys = cols.view(np.dtype((np.void, n))).ravel()
    _, first, inv, counts = np.unique(keys, return_index=True, return_inverse=True,
                                      return_counts=True)
    return ColumnDedupe(cols[first].T.copy(), first, inv.reshape(-1), counts)


@dataclass
class Elimination:
    """Reduced column basis: basis[t] has a 1 at pivots[t], 0 at other pivots."""

    p: int
    basis: np.ndarray
    pivots: list
    sources: list      # index (in processing order) of the column that created each pivot

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, cols: np.ndarray) -> np.ndarray:
        """Reduce a batch of columns (given as rows) against the basis."""
        y = np.mod(np.asarray(cols, dtype=np.float64), self.p)
        if self.pivots:
            y = np.mod(y - np.mod(y[:, self.pivots] @ self.basis, self.p), self.p)
        return y

    def contains(self, vec) -> bool:
        return not self.reduce(np.asarray(vec)[None, :]).any()


def eliminate(cols: np.ndarray, p: int, batch: int = 256,
              limit: int | None = None) -> Elimination:
    """Incremental column-space elimination over F_p.

    ``cols`` holds one column per row (shape (count, length)) with entries
    already reduced mod p.  Columns are processed in the given order.
    """
    if p >= MAX_PRIME:
        raise LinAlgError("prime too large for exact float64 products")
    cols = np.asarray(cols, dtype=np.float64)
    length = cols.shape[1] if cols.ndim == 2 else 0
    state = Elimination(p, np.zeros((0, length)), [], [])
    for start in range(0, len(cols), max(1, batch)):
        y = state.reduce(cols[start:start + batch])
        for i in range(len(y)):
            nz = np.flatnonzero(y[i])
            if not len(nz):
                continue
            j = int(nz[0])
            v = np.mod(y[i] * pow(int(y[i, j]), -1, p), p)
            if state.pivots:
                b = state.basis
                state.basis = np.mod(b - np.mod(np.outer(b[:, j], v), p), p)
            state.basis = np.vstack([state.basis, v])
            state.pivots.append(j)
            state.sources.append(start + i)
            rest = y[i + 1:]
            if len(rest):
                y[i + 1:] = np.mod(rest - np.mod(np.outer(rest[:, j], v), p), p)
            if limit is not None and state.rank >= limit:
                return state
    return state


def _ordered_columns(entries: np.ndarray, fld: PrimeField, dedupe: bool = True):
    if dedupe:
        d = dedupe_columns(entries)
        order = np.argsort(-d.counts, kind="stable")
        return bytes_mod_p(d.columns[:, order].T, fld), d.first_index[order], d
    entries = np.asarray(entries, dtype=np.uint8)
    return bytes_mod_p(entries.T, fld), np.arange(entries.shape[1]), None


def rank_mod_p(entries: np.ndarray, fld: PrimeField, batch: int = 256,
               dedupe: bool = True) -> int:
    cols, _, _ = _ordered_columns(entries, fld, dedupe)
    return eliminate(cols, fld.p, batch).rank


def in_span_mod_p(target, entries: np.ndarray, fld: PrimeField,
                  elim: Elimination | None = None) -> bool:
    """True iff target (a vector of integers) lies in the column span mod p."""
    if elim is None:
        cols, _, _ = _ordered_columns(entries, fld)
        elim = eliminate(cols, fld.p)
    vec = np.mod(np.asarray(target, dtype=np.int64), fld.p).astype(np.float64)
    return elim.contains(vec)


@dataclass
class RankCertificate:
    rank: int
    primes_used: list
    ranks: dict
    pivot_columns: list
    column_dedupe_stats: dict
    denominator_in_span: dict = field(default_factory=dict)
    wall_time: float = 0.0
    matrix_sha256: str = ""
    config_sha256: str = ""

    @property
    def consistent(self) -> bool:
        return len(set(self.ranks.values())) == 1

    def to_json(self) -> str:
        d = asdict(self)
        d["ranks"] = {str(k): v for k, v in self.ranks.items()}
        d["denominator_in_span"] = {str(k): v for k, v in self.denominator_in_span.items()}
        d["consistent"] = self.consistent
        return json.dumps(d, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RankCertificate":
        d = json.loads(text)
        d.pop("consistent", None)
        d["ranks"] = {int(k): v for k, v in d["ranks"].items()}
        d["denominator_in_span"] = {int(k): v for k, v in d.get("denominator_in_span", {}).items()}
        return cls(**d)


def certify_rank(entries: np.ndarray, primes: Sequence[int] = DEFAULT_PRIMES,
                 denominators=None, batch: int = 256, spot_checks: int = 32,
                 seed: int = 0) -> RankCertificate:
    """Rank over each prime, pivot columns, and optional span check of the
    denominator vector."""
    t0 = time.perf_counter()
    entries = np.asarray(entries, dtype=np.uint8)
    d = dedupe_columns(entries)
    order = np.argsort(-d.counts, kind="stable")
    raw = d.columns[:, order].T
    ranks, in_span, pivots = {}, {}, []
    rng = np.random.default_rng(seed)
    for p in primes:
        fld = PrimeField(p)
        cols = bytes_mod_p(raw, fld)
        elim = eliminate(cols, p, batch)
        ranks[p] = elim.rank
        if not pivots:
            pivots = sorted(int(d.first_index[order[s]]) for s in elim.sources)
        # every column must be recovered from its pivot entries
        if len(cols):
            pick = rng.choice(len(cols), size=min(spot_checks, len(cols)), replace=False)
            c = cols[pick]
            recon = np.mod(c[:, elim.pivots] @ elim.basis, p)
            if not np.array_equal(recon, c):
                raise LinAlgError(f"elimination spot check failed mod {p}")
        if denominators is not None:
            in_span[p] = in_span_mod_p(denominators, entries, fld, elim)
    return RankCertificate(rank=min(ranks.values()) if ranks else 0,
                           primes_used=[int(p) for p in primes], ranks=ranks,
                           pivot_columns=pivots, column_dedupe_stats=d.stats(),
                           denominator_in_span=in_span,
                           wall_time=time.perf_counter() - t0)


# ---- characteristic zero -------------------------------------------------------

def gaussian_real_form(entries: np.ndarray) -> np.ndarray:
    """Integer matrix [[Re, -Im], [Im, Re]] of a byte matrix; its rank is
    twice the complex rank."""
    entries = np.asarray(entries, dtype=np.uint8)
    re = np.zeros(entries.shape, dtype=np.int64)
    im = np.zeros(entries.shape, dtype=np.int64)
    for k, (a, b) in enumerate(((1, 0), (0, 1), (-1, 0), (0, -1))):
        re[entries == k] = a
        im[entries == k] = b
    return np.block([[re, -im], [im, re]])


def bareiss_rank(m) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [[int(x) for x in row] for row in np.asarray(m)]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank, prev = 0, 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pv = a[rank][c]
        for r in range(rank + 1, rows):
            f = a[r][c]
            row_r, row_k = a[r], a[rank]
            for k in range(c + 1, cols):
                row_r[k] = (pv * row_r[k] - f * row_k[k]) // prev
            row_r[c] = 0
        prev = pv
        rank += 1
        if rank == rows:
            break
    return rank


def rank_char0(entries: np.ndarray) -> int:
    """Exact complex rank of a (small) byte matrix."""
    r = bareiss_rank(gaussian_real_form(entries))
    if r % 2:
        raise LinAlgError("real form has odd rank")
    return r // 2
