"""Clifford algebras of integral quadratic lattices.

Elements are sparse maps from monomial bitmasks to ``Fraction``
coefficients.  Bit ``i`` of a mask stands for the basis vector ``v_i``;
a mask denotes the product of its basis vectors in ascending index order.
The defining relation is ``ab + ba = (a, b)``, so ``v_i^2 = gram[i][i]/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence


class CliffordError(ValueError):
    pass


@dataclass(frozen=True)
class GramSpace:
    """A lattice Z^rank with a symmetric integer Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if n > 12 or any(len(row) != n for row in g):
            raise CliffordError("gram must be square of size at most 12")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise CliffordError("gram must be symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_diagonal(self) -> bool:
        n = self.rank
        return all(self.gram[i][j] == 0 for i in range(n) for j in range(n) if i != j)

    def one(self) -> "CliffordElement":
        return CliffordElement(self, {0: Fraction(1)})

    def zero(self) -> "CliffordElement":
        return CliffordElement(self, {})

    def scalar(self, c) -> "CliffordElement":
        return CliffordElement(self, {0: Fraction(c)})

    def gen(self, i: int) -> "CliffordElement":
        return CliffordElement(self, {1 << i: Fraction(1)})

    def monomial(self, indices: Iterable[int], coeff=1) -> "CliffordElement":
        """Product of the given generators in the given order."""
        out = self.scalar(coeff)
        for i in indices:
            out = out * self.gen(i)
        return out


# the canonical instance: the negative octave space with gram -2*identity
NEG_OCTAVE = GramSpace(tuple(tuple(-2 if i == j else 0 for j in range(8))
                             for i in range(8)), name="-O")


class CliffordElement:
    __slots__ = ("space", "terms")

    def __init__(self, space: GramSpace, terms: Mapping[int, object]):
        self.space = space
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (bin(m).count("1"), m)):
            idx = [i for i in range(self.space.rank) if m >> i & 1]
            word = "*".join(f"e{i}" for i in idx) or "1"
            parts.append(f"{self.terms[m]}*{word}")
        return " + ".join(parts)

    def _check(self, other: "CliffordElement"):
        if self.space != other.space:
            raise CliffordError("elements live over different Gram spaces")

    def __eq__(self, other) -> bool:
        if isinstance(other, CliffordElement):
            return self.space == other.space and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = self.space.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CliffordElement(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.space, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = self.space.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return cl_mul(self, other)
        c = Fraction(other)
        return CliffordElement(self.space, {m: c * v for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return CliffordElement(self.space, {m: c * v for m, v in self.terms.items()})

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return all(bin(m).count("1") % 2 == 0 for m in self.terms)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def scalar_part(self) -> Fraction:
        return self.terms.get(0, Fraction(0))

    def involution(self) -> "CliffordElement":
        return cl_involution(self)

    def grade(self, k: int) -> "CliffordElement":
        return cl_grade(self, k)


# ---- monomial products ------------------------------------------------------

def _popcount(x: int) -> int:
    return bin(x).count("1")


def _orthogonal_sign(a: int, b: int) -> int:
    # number of transpositions needed to sort the concatenated word
    swaps = 0
    x = a >> 1
    while x:
        swaps += _popcount(x & b)
        x >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _mono_times_gen(space: GramSpace, mask: int, k: int) -> tuple[tuple[int, Fraction], ...]:
    """(sorted monomial) * v_k as a tuple of (mask, coefficient)."""
    if mask == 0:
        return ((1 << k, Fraction(1)),)
    top = mask.bit_length() - 1
    if top < k:
        return ((mask | (1 << k), Fraction(1)),)
    rest = mask & ~(1 << top)
    g = space.gram
    if top == k:
        return ((rest, Fraction(g[k][k], 2)),)
    # v_top v_k = -v_k v_top + (v_top, v_k)
    out: dict[int, Fraction] = {}
    for m, c in _mono_times_gen(space, rest, k):
        for m2, c2 in _mono_times_gen(space, m, top):
            out[m2] = out.get(m2, 0) - c * c2
    if g[top][k]:
        out[rest] = out.get(rest, 0) + g[top][k]
    return tuple((m, c) for m, c in out.items() if c)


@lru_cache(maxsize=None)
def _mono_product(space: GramSpace, a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
    if space.is_diagonal:
        sign = _orthogonal_sign(a, b)
        coeff = Fraction(sign)
        common = a & b
        i = 0
        while common:
            if common & 1:
                coeff *= Fraction(space.gram[i][i], 2)
            common >>= 1
            i += 1
        return ((a ^ b, coeff),) if coeff else ()
    cur: dict[int, Fraction] = {a: Fraction(1)}
    for k in range(space.rank):
        if b >> k & 1:
            nxt: dict[int, Fraction] = {}
            for m, c in cur.items():
                for m2, c2 in _mono_times_gen(space, m, k):
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = {m: c for m, c in nxt.items() if c}
    return tuple(cur.items())


def cl_mul(x: CliffordElement, y: CliffordElement) -> CliffordElement:
    x._check(y)
    out: dict[int, Fraction] = {}
    sp = x.space
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            for m, c in _mono_product(sp, a, b):
                out[m] = out.get(m, 0) + ca * cb * c
    return CliffordElement(sp, out)


def _involution_sign(k: int) -> int:
    # reverse a grade-k word and negate each vector factor
    return (-1) ** k * (-1) ** (k * (k - 1) // 2)


def cl_involution(x: CliffordElement) -> CliffordElement:
    """The main involution: anti-automorphism acting as -1 on vectors.

    For non-orthogonal Grams reversing a sorted word produces contraction
    terms, so the general path re-multiplies the reversed factors.
    """
    sp = x.space
    if sp.is_diagonal:
        return CliffordElement(sp, {m: _involution_sign(_popcount(m)) * c
                                    for m, c in x.terms.items()})
    out = sp.zero()
    for m, c in x.terms.items():
        idx = [i for i in range(sp.rank) if m >> i & 1]
        out = out + sp.monomial(reversed(idx), c * (-1) ** len(idx))
    return out


def cl_grade(x: CliffordElement, k: int) -> CliffordElement:
    if not 0 <= k <= x.space.rank:
        raise CliffordError("grade out of range")
    return CliffordElement(x.space, {m: c for m, c in x.terms.items() if _popcount(m) == k})


def cl_is_one_mod2(x: CliffordElement) -> bool:
    """True iff x - 1 has only even coefficients (x must be integral)."""
    if not x.is_integral():
        raise CliffordError("mod-2 reduction needs integral coefficients")
    d = x - 1
    return all(c.numerator % 2 == 0 for c in d.terms.values())


def embed_vector(space: GramSpace, v: Sequence) -> CliffordElement:
    if len(v) != space.rank:
        raise CliffordError("vector length does not match the rank")
    return CliffordElement(space, {1 << i: Fraction(c) for i, c in enumerate(v)})


def change_basis(x: CliffordElement, target: GramSpace,
                 images: Sequence[Sequence]) -> CliffordElement:
    """Rewrite x in another lattice basis of the same quadratic space.

    ``images[i]`` holds the coordinates of the i-th source basis vector in
    the target basis.  Each source monomial is re-multiplied in ``target``.
    """
    gens = [embed_vector(target, images[i]) for i in range(x.space.rank)]
    out = target.zero()
    for m, c in x.terms.items():
        term = target.scalar(c)
        for i in range(x.space.rank):
            if m >> i & 1:
                term = term * gens[i]
        out = out + term
    return out
