"""Spin group of the (2,10) lattice, its symplectic image, and point maps.

The 12-dimensional space V has basis h1, h2, h3, h4, e0..e7 with
(h1, h2) = (h3, h4) = 1 and (e_i, e_i) = -2.  Its Clifford algebra is
modelled by 4x4 matrices over the Clifford algebra of the negative
octave space; the spin group lands in the Hermitian symplectic group
of degree two and, via the 8x8 representation of the even part, in
Sp(16).

Matrix conventions used throughout:

* exact matrices are numpy ``object`` arrays of ``Fraction``;
* symplectic matrices act on the Siegel half-space by
  ``Z -> (AZ + B)(CZ + D)^-1``;
* the orthogonal image of a spin element is the 12x12 matrix of
  ``v -> g v g^-1`` in the basis (h1, h2, h3, h4, e0, ..., e7).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .clifford import (NEG_OCTAVE, CliffordElement, CliffordError, GramSpace,
                       change_basis, cl_involution)
from .octonion import (E_TO_F, F_ROWS, GRAM_S, IntegralOctave, Octave,
                       f_basis, oct_conj, oct_mul, oct_trace, triple_trace)

SPACE = NEG_OCTAVE

# Gram matrix of V in the basis (h1, h2, h3, h4, e0..e7)
GRAM_V = np.zeros((12, 12), dtype=np.int64)
GRAM_V[0, 1] = GRAM_V[1, 0] = GRAM_V[2, 3] = GRAM_V[3, 2] = 1
for _i in range(4, 12):
    GRAM_V[_i, _i] = -2

# The negative octave lattice in the f-basis, for integrality tests.
LATTICE_SPACE = GramSpace(tuple(tuple(-int(x) for x in row) for row in GRAM_S), name="-O(Z)")


class EmbeddingError(ValueError):
    pass


def frac_matrix(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    return np.vectorize(Fraction, otypes=[object])(a)


def frac_identity(n: int) -> np.ndarray:
    return frac_matrix(np.eye(n, dtype=np.int64))


def is_integer_matrix(m: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in m.flat)


def to_int_matrix(m: np.ndarray) -> np.ndarray:
    if not is_integer_matrix(m):
        raise EmbeddingError("matrix has non-integral entries")
    return np.array([[int(x) for x in row] for row in m], dtype=object)


# ---- the 8x8 representation of the even Clifford algebra ------------------

def left_mult_matrix(a: Octave) -> np.ndarray:
    """Matrix of x -> a*x; column k holds the e-coordinates of a*e_k."""
    cols = [oct_mul(a, Octave.basis(k)).coords for k in range(8)]
    return frac_matrix([[cols[k][i] for k in range(8)] for i in range(8)])


def p_matrix(a: Octave) -> np.ndarray:
    """P(a) = L_a - tr(a)*identity.

    P(e0) is minus the identity, P(e_i) = L_{e_i} for i >= 1.  The entry
    formula (tr(conj(e_i)*a*e_k)/2) agrees on imaginary a but gives +1 at
    e0; the homomorphism property needs -1 there.
    """
    return left_mult_matrix(a) - oct_trace(a) * frac_identity(8)


def p_matrix_entry_formula(a: Octave) -> np.ndarray:
    """The literal (tr(conj(e_i)*a*e_k)/2); kept only to document the sign
    discrepancy at e0."""
    es = [Octave.basis(i) for i in range(8)]
    return frac_matrix([[triple_trace(oct_conj(es[i]), a, es[k]) / 2 for k in range(8)]
                        for i in range(8)])


def q_bilinear(a: Octave) -> np.ndarray:
    """Q(a) = (tr(conj(f_i) * a * f_j))_ij."""
    fs = f_basis()
    return frac_matrix([[triple_trace(oct_conj(fi), a, fj) for fj in fs] for fi in fs])


@lru_cache(maxsize=None)
def _p_int(j: int) -> np.ndarray:
    return np.array(p_matrix(Octave.basis(j)), dtype=np.int64)


@lru_cache(maxsize=None)
def hom_monomial(mask: int) -> np.ndarray:
    """Integer 8x8 image of an even e-monomial (signed permutation)."""
    idx = [i for i in range(8) if mask >> i & 1]
    if len(idx) % 2:
        raise EmbeddingError("odd monomial has no image")
    out = np.eye(8, dtype=np.int64)
    for t in range(0, len(idx), 2):
        i, j = idx[t], idx[t + 1]
        pair = _p_int(j) if i == 0 else _p_int(i) @ _p_int(j)
        out = out @ pair
    return out


def even_hom_to_m8(x: CliffordElement) -> np.ndarray:
    """Image of an even element of C(-O) under the involutive homomorphism
    e0*a -> P(a)."""
    if x.space != SPACE:
        raise EmbeddingError("expected an element over the negative octave space")
    if not x.is_even():
        raise EmbeddingError("element is not even")
    if not x.terms:
        return frac_matrix(np.zeros((8, 8), dtype=np.int64))
    den = 1
    for c in x.terms.values():
        den = den * c.denominator // np.gcd(den, c.denominator)
    acc = np.zeros((8, 8), dtype=object)
    for m, c in x.terms.items():
        acc = acc + int(c * den) * hom_monomial(m).astype(object)
    return np.vectorize(lambda v: Fraction(v, den), otypes=[object])(acc)


def octave_to_clifford(a: Octave) -> CliffordElement:
    """The even element e0*a of C(-O)."""
    e0 = SPACE.gen(0)
    v = CliffordElement(SPACE, {1 << i: c for i, c in enumerate(a.coords)})
    return e0 * v


# ---- integral structure ------------------------------------------------------

def lattice_coordinates(x: CliffordElement) -> CliffordElement:
    """Rewrite an element of C(-O) over the f-basis monomials.

    The integral Clifford order is the Z-span of those monomials, so x is
    integral iff the result has integer coefficients.
    """
    images = [[E_TO_F[k][i] for k in range(8)] for i in range(8)]
    return change_basis(x, LATTICE_SPACE, images)


def from_lattice_coordinates(y: CliffordElement) -> CliffordElement:
    images = [list(row) for row in F_ROWS]
    return change_basis(y, SPACE, images)


def is_integral_element(x: CliffordElement) -> bool:
    return lattice_coordinates(x).is_integral()


def integral_order_monomial(indices: Sequence[int]) -> CliffordElement:
    """f_{i1} ... f_{im} as an element of C(-O)."""
    out = SPACE.one()
    for i in indices:
        out = out * CliffordElement(SPACE, {1 << k: c for k, c in enumerate(F_ROWS[i])})
    return out


@lru_cache(maxsize=None)
def _p_product_lattice():
    """Hermite basis of the Z-span of P(f_j1)...P(f_jm), 1<=j1<...<jm<=7."""
    from itertools import combinations
    from sympy import Matrix
    from sympy.matrices.normalforms import hermite_normal_form

    ps = [p_matrix(f) for f in f_basis()]
    gens = []
    for m in range(8):
        for js in combinations(range(1, 8), m):
            acc = frac_identity(8)
            for j in js:
                acc = acc.dot(ps[j])
            gens.append(acc)
    den = 1
    for g in gens:
        for v in g.flat:
            den = den * v.denominator // np.gcd(den, v.denominator)
    cols = [[int(v * den) for v in g.flat] for g in gens]
    mat = Matrix(64, len(cols), lambda i, j: cols[j][i])
    h = hermite_normal_form(mat)
    return den, h


def in_p_product_lattice(m: np.ndarray) -> bool:
    """Is m in the abelian group generated by the P(f)-products?"""
    from sympy import Matrix

    den, h = _p_product_lattice()
    vec = []
    for v in m.flat:
        w = Fraction(v) * den
        if w.denominator != 1:
            return False
        vec.append(int(w))
    sol, params = h.gauss_jordan_solve(Matrix(vec))
    if params.shape[0]:
        sol = sol.subs({p: 0 for p in params})
    return all(x.is_integer for x in sol)


# ---- 4x4 matrices over the Clifford algebra ---------------------------------

class CliffordMatrix:
    """Square matrix with CliffordElement entries over the octave space."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = []
        for row in entries:
            r = []
            for x in row:
                if not isinstance(x, CliffordElement):
                    x = SPACE.scalar(x)
                r.append(x)
            rows.append(tuple(r))
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise EmbeddingError("matrix must be square")
        self.entries = tuple(rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int = 4):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int = 4):
        return cls([[0] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if isinstance(other, CliffordMatrix):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "CliffordMatrix(\n" + "\n".join(
            "  [" + ", ".join(repr(x) for x in row) + "]" for row in self.entries) + ")"

    def __add__(self, other):
        return type(self)([[a + b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return type(self)([[a - b for a, b in zip(r, s)]
                           for r, s in zip(self.entries, other.entries)])

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.entries])

    def scale(self, c):
        return type(self)([[a * c for a in r] for r in self.entries])

    def __matmul__(self, other):
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = SPACE.zero()
                for k in range(n):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return CliffordMatrix(out)

    def is_even(self) -> bool:
        return all(x.is_even() for r in self.entries for x in r)

    def map(self, fn: Callable[[CliffordElement], CliffordElement]):
        return CliffordMatrix([[fn(x) for x in r] for r in self.entries])

    def blocks(self):
        """The 2x2 blocks (a, b, c, d) as nested tuples."""
        e = self.entries
        a = ((e[0][0], e[0][1]), (e[1][0], e[1][1]))
        b = ((e[0][2], e[0][3]), (e[1][2], e[1][3]))
        c = ((e[2][0], e[2][1]), (e[3][0], e[3][1]))
        d = ((e[2][2], e[2][3]), (e[3][2], e[3][3]))
        return a, b, c, d

    @classmethod
    def from_blocks(cls, a, b, c, d):
        return cls([list(a[0]) + list(b[0]), list(a[1]) + list(b[1]),
                    list(c[0]) + list(d[0]), list(c[1]) + list(d[1])])


class CPlusMatrix4(CliffordMatrix):
    """A 4x4 matrix over the even Clifford algebra C+(-O)."""

    def __init__(self, entries):
        super().__init__(entries)
        if self.n != 4:
            raise EmbeddingError("expected a 4x4 matrix")
        if not self.is_even():
            raise EmbeddingError("entries must be even Clifford elements")


def hermitian_adjoint(m: CliffordMatrix) -> CliffordMatrix:
    """(m_ij)^* = (m'_ji)."""
    n = m.n
    return CliffordMatrix([[cl_involution(m[j, i]) for j in range(n)] for i in range(n)])


def _block_star(x):
    return ((cl_involution(x[0][0]), cl_involution(x[1][0])),
            (cl_involution(x[0][1]), cl_involution(x[1][1])))


def _neg_block(x):
    return tuple(tuple(-v for v in row) for row in x)


def star_involution(m: CliffordMatrix) -> CliffordMatrix:
    """(a b; c d) -> (d*, -b*; -c*, a*), the main involution of C(V)."""
    a, b, c, d = m.blocks()
    out = CliffordMatrix.from_blocks(_block_star(d), _neg_block(_block_star(b)),
                                     _neg_block(_block_star(c)), _block_star(a))
    return type(m)(out.entries) if isinstance(m, CPlusMatrix4) else out


SYMPLECTIC_UNIT = CliffordMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


def is_hermitian_symplectic(m: CliffordMatrix) -> bool:
    """M^* I M = I with I = (0 e; -e 0)."""
    return hermitian_adjoint(m) @ SYMPLECTIC_UNIT @ m == SYMPLECTIC_UNIT


@lru_cache(maxsize=None)
def spi_images() -> tuple[CliffordMatrix, ...]:
    """Images of h1, h2, h3, h4, e0, ..., e7 in M4(C(-O))."""
    e0 = SPACE.gen(0)

    def place(pairs, elem):
        rows = [[0] * 4 for _ in range(4)]
        for (i, j), s in pairs.items():
            rows[i][j] = elem * s
        return CliffordMatrix(rows)

    out = [
        place({(0, 1): 1, (3, 2): 1}, e0),
        place({(1, 0): -1, (2, 3): -1}, e0),
        place({(0, 3): 1, (1, 2): -1}, e0),
        place({(2, 1): 1, (3, 0): -1}, e0),
        place({(0, 0): -1, (1, 1): 1, (2, 2): -1, (3, 3): 1}, e0),
    ]
    for i in range(1, 8):
        out.append(place({(k, k): 1 for k in range(4)}, SPACE.gen(i)))
    return tuple(out)


# one (row, col, mask, sign) position per basis image; the supports are disjoint
_KEY_POSITIONS = [(0, 1, 1, 1), (1, 0, 1, -1), (0, 3, 1, 1), (2, 1, 1, 1), (1, 1, 1, 1)] + \
                 [(0, 0, 1 << i, 1) for i in range(1, 8)]


def decompose_vector(x: CliffordMatrix):
    """Coefficients of x over the 12 basis images, or None if x is not in V."""
    coeffs = []
    for r, c, mask, sign in _KEY_POSITIONS:
        coeffs.append(x[r, c].terms.get(mask, Fraction(0)) * sign)
    imgs = spi_images()
    acc = CliffordMatrix.zeros()
    for k, cf in enumerate(coeffs):
        if cf:
            acc = acc + imgs[k].scale(cf)
    return coeffs if acc == x else None


def vector_image(v: Sequence) -> CliffordMatrix:
    imgs = spi_images()
    acc = CliffordMatrix.zeros()
    for k, c in enumerate(v):
        if c:
            acc = acc + imgs[k].scale(Fraction(c))
    return acc


def is_spin(m: CliffordMatrix):
    """Return (True, orthogonal 12x12 image) if m is in Spin(V), else (False, None)."""
    if m.n != 4:
        raise EmbeddingError("expected a 4x4 matrix")
    if not m.is_even():
        return False, None
    inv = star_involution(m)
    if inv @ m != CliffordMatrix.identity():
        return False, None
    o = np.zeros((12, 12), dtype=object)
    for k, img in enumerate(spi_images()):
        coeffs = decompose_vector(m @ img @ inv)
        if coeffs is None:
            return False, None
        o[:, k] = coeffs
    o = np.vectorize(Fraction, otypes=[object])(o)
    return True, o


# ---- generators ------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    """One of the generator shapes: inversion, upper or lower translation."""

    kind: str
    h1: int = 0
    h2: int = 0
    octave: tuple[int, ...] = (0,) * 8   # f-coordinates

    def __post_init__(self):
        if self.kind not in ("identity", "inversion", "translation_upper", "translation_lower"):
            raise EmbeddingError(f"unknown generator kind {self.kind!r}")
        object.__setattr__(self, "octave", tuple(int(x) for x in self.octave))
        if len(self.octave) != 8:
            raise EmbeddingError("octave parameter needs 8 f-coordinates")

    @classmethod
    def inversion(cls):
        return cls("inversion")

    @classmethod
    def translation_upper(cls, h1: int, h2: int, octave=(0,) * 8):
        if isinstance(octave, IntegralOctave):
            octave = octave.fcoords
        return cls("translation_upper", int(h1), int(h2), tuple(octave))

    @classmethod
    def translation_lower(cls, octave):
        if isinstance(octave, IntegralOctave):
            octave = octave.fcoords
        return cls("translation_lower", 0, 0, tuple(octave))

    def doubled(self) -> "GeneratorSpec":
        return GeneratorSpec(self.kind, 2 * self.h1, 2 * self.h2,
                             tuple(2 * x for x in self.octave))


# The two printed matrices that fail the spin test, kept for regression.
def printed_inversion() -> CliffordMatrix:
    return CliffordMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, 0, -1, 0]])


def printed_translation_upper(h1: int, h2: int, octave=(0,) * 8) -> CliffordMatrix:
    hh = octave_to_clifford(Octave.from_f(octave))
    return CliffordMatrix([[1, 0, h1, hh], [0, 0, cl_involution(hh), h2],
                           [0, 0, 1, 0], [0, 0, 0, 1]])


def build_generator(spec: GeneratorSpec, check: bool = True) -> CPlusMatrix4:
    hh = octave_to_clifford(Octave.from_f(spec.octave))
    hh_inv = cl_involution(hh)
    if spec.kind == "identity":
        m = CPlusMatrix4(CliffordMatrix.identity().entries)
    elif spec.kind == "inversion":
        m = CPlusMatrix4(SYMPLECTIC_UNIT.entries)
    elif spec.kind == "translation_upper":
        m = CPlusMatrix4([[1, 0, spec.h1, hh], [0, 1, hh_inv, spec.h2],
                          [0, 0, 1, 0], [0, 0, 0, 1]])
    else:
        m = CPlusMatrix4([[1, hh, 0, 0], [0, 1, 0, 0],
                          [0, 0, 1, 0], [0, 0, -hh_inv, 1]])
    if check and not is_spin(m)[0]:
        raise EmbeddingError(f"{spec} does not give a spin element")
    return m


def conjugate_by_scaling(m: CliffordMatrix, require_integral: bool = True) -> CliffordMatrix:
    """N^-1 m N for N = diag(sqrt2 E, E/sqrt2): halve b, double c."""
    a, b, c, d = m.blocks()
    half = tuple(tuple(x * Fraction(1, 2) for x in row) for row in b)
    dbl = tuple(tuple(x * 2 for x in row) for row in c)
    out = CliffordMatrix.from_blocks(a, half, dbl, d)
    if require_integral and not all(is_integral_element(x) for r in out.entries for x in r):
        raise EmbeddingError("scaled element leaves the integral Clifford order")
    return out


def is_integral_matrix(m: CliffordMatrix) -> bool:
    return all(is_integral_element(x) for r in m.entries for x in r)


def is_one_mod2(m: CliffordMatrix) -> bool:
    """m is congruent to the identity modulo twice the integral order."""
    for i in range(m.n):
        for j in range(m.n):
            y = lattice_coordinates(m[i, j] - (1 if i == j else 0))
            if not y.is_integral() or any(c.numerator % 2 for c in y.terms.values()):
                return False
    return True


# ---- the homomorphism into Sp(16) ------------------------------------------

_F_EXACT = frac_matrix(F_ROWS)
_F_INV = frac_matrix(np.array(E_TO_F, dtype=object).T)   # F^-1
assert (np.dot(_F_EXACT, _F_INV) == frac_identity(8)).all()


def embed_J0(m: CliffordMatrix) -> np.ndarray:
    """Entrywise image under the 8x8 representation (32x32 exact)."""
    return np.block([[even_hom_to_m8(m[i, j]) for j in range(4)] for i in range(4)])


def embed_J(m: CliffordMatrix, check: bool = True) -> np.ndarray:
    """J(m): J0(m) conjugated so that integral spin elements become integral.

    Blocks transform as F A F^-1, 2 F B F', (1/2) F'^-1 C F^-1, F'^-1 D F'.
    """
    if check and not is_spin(m)[0]:
        raise EmbeddingError("embed_J needs a spin element")
    j0 = embed_J0(m)
    f16 = np.zeros((16, 16), dtype=object)
    f16inv = np.zeros((16, 16), dtype=object)
    for k in (0, 8):
        f16[k:k + 8, k:k + 8] = _F_EXACT
        f16inv[k:k + 8, k:k + 8] = _F_INV
    f16 = np.vectorize(Fraction, otypes=[object])(f16)
    f16inv = np.vectorize(Fraction, otypes=[object])(f16inv)
    a, b = j0[:16, :16], j0[:16, 16:]
    c, d = j0[16:, :16], j0[16:, 16:]
    out = np.empty((32, 32), dtype=object)
    out[:16, :16] = f16.dot(a).dot(f16inv)
    out[:16, 16:] = 2 * f16.dot(b).dot(f16.T)
    out[16:, :16] = f16inv.T.dot(c).dot(f16inv) / 2
    out[16:, 16:] = f16inv.T.dot(d).dot(f16.T)
    return out


def standard_symplectic_form(n: int = 16) -> np.ndarray:
    j = np.zeros((2 * n, 2 * n), dtype=np.int64)
    j[:n, n:] = np.eye(n, dtype=np.int64)
    j[n:, :n] = -np.eye(n, dtype=np.int64)
    return j


@dataclass(frozen=True)
class LevelReport:
    integral_symplectic: bool
    principal_level: int     # largest l in {1, 2, 4} with M = 1 mod l; 0 if not integral
    igusa_12: bool           # theta group
    igusa_24: bool

    @property
    def theta(self) -> bool:
        return self.igusa_12


def _even_diagonal(m: np.ndarray) -> bool:
    return all(int(x) % 2 == 0 for x in np.diagonal(m))


def classify_level(m: np.ndarray) -> LevelReport:
    n = m.shape[0] // 2
    if not is_integer_matrix(m):
        return LevelReport(False, 0, False, False)
    mi = to_int_matrix(m)
    j = standard_symplectic_form(n).astype(object)
    if not (mi.T.dot(j).dot(mi) == j).all():
        return LevelReport(False, 0, False, False)
    ident = np.eye(2 * n, dtype=np.int64).astype(object)
    level = 1
    for l in (2, 4):
        if all(int(x) % l == 0 for x in (mi - ident).flat):
            level = l
    a, b, c, d = mi[:n, :n], mi[:n, n:], mi[n:, :n], mi[n:, n:]
    ab, cd = a.dot(b.T), c.dot(d.T)
    igusa_12 = _even_diagonal(ab) and _even_diagonal(cd)
    igusa_24 = level >= 2 and all(int(x) % 4 == 0 for x in np.diagonal(ab)) \
        and all(int(x) % 4 == 0 for x in np.diagonal(cd))
    return LevelReport(True, level, igusa_12, igusa_24)


# ---- points of the tube domain ------------------------------------------------

@dataclass(frozen=True)
class OrthPoint:
    z1: complex
    z2: complex
    zf: np.ndarray        # complex e-coordinates of the octave component

    def __post_init__(self):
        zf = np.asarray(self.zf, dtype=complex).reshape(8)
        object.__setattr__(self, "zf", zf)
        object.__setattr__(self, "z1", complex(self.z1))
        object.__setattr__(self, "z2", complex(self.z2))

    def discriminant(self) -> float:
        """Im(z1) Im(z2) - N(Im zf)."""
        y = self.zf.imag
        return self.z1.imag * self.z2.imag - float(y @ y)

    def is_valid(self) -> bool:
        return self.z1.imag > 0 and self.discriminant() > 0


CALIBRATIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda w: w,
    "conj": lambda w: np.concatenate([w[:1], -w[1:]]),
    "neg": lambda w: -w,
    "neg_conj": lambda w: np.concatenate([-w[:1], w[1:]]),
}
# chart found by discover_calibration for j_point/embed_J
DEFAULT_CALIBRATION = "conj"

# slots of (1, *, z1, z2) in the basis (h1, h2, h3, h4)
CHART_SLOTS = (3, 2, 0, 1)


@lru_cache(maxsize=None)
def _q_basis_float() -> np.ndarray:
    return np.array([np.array(q_bilinear(Octave.basis(k)), dtype=float) for k in range(8)])


def q_bilinear_complex(zf: np.ndarray) -> np.ndarray:
    return np.tensordot(np.asarray(zf, dtype=complex), _q_basis_float(), axes=1)


def j_point(z: OrthPoint, check: bool = True) -> np.ndarray:
    """(z1 S, Q(zf); Q(zf)', z2 S) in the Siegel half-space of degree 16."""
    s = GRAM_S.astype(float)
    q = q_bilinear_complex(z.zf)
    out = np.block([[z.z1 * s, q], [q.T, z.z2 * s]])
    if check:
        y = out.imag
        lo = np.linalg.eigvalsh((y + y.T) / 2).min()
        if not lo > 1e-12 * max(1.0, np.abs(y).max()):
            raise EmbeddingError("imaginary part is not positive definite")
    return out


def point_vector(z: OrthPoint, calibration: str = DEFAULT_CALIBRATION) -> np.ndarray:
    """Isotropic vector (1, *, z1, z2, zf) with * = N(zf) - z1 z2 in V(C)."""
    w = CALIBRATIONS[calibration](z.zf)
    star = complex(w @ w) - z.z1 * z.z2
    v = np.zeros(12, dtype=complex)
    for slot, val in zip(CHART_SLOTS, (1.0, star, z.z1, z.z2)):
        v[slot] = val
    v[4:] = w
    return v


def orth_action(o: np.ndarray, z: OrthPoint, calibration: str = DEFAULT_CALIBRATION):
    """Apply an orthogonal 12x12 matrix to z; return (new point, t) with
    o(1, *, z) = t (1, *, w)."""
    v = np.asarray(o, dtype=float) @ point_vector(z, calibration)
    t = v[CHART_SLOTS[0]]
    if abs(t) < 1e-14 * max(1.0, np.abs(v).max()):
        raise EmbeddingError("point is mapped to the cusp at infinity")
    v = v / t
    # every calibration map is an involution
    w = CALIBRATIONS[calibration](v[4:])
    new = OrthPoint(v[CHART_SLOTS[2]], v[CHART_SLOTS[3]], w)
    if not new.is_valid():
        raise EmbeddingError("image left the tube domain component")
    return new, complex(t)


def orth_action_exact_vector(o: np.ndarray, v: Sequence) -> np.ndarray:
    return np.asarray(o, dtype=object).dot(np.asarray(v, dtype=object))


def random_orth_point(rng: np.random.Generator, lo: float = 0.5, hi: float = 2.0,
                      margin: float = 0.25) -> OrthPoint:
    """Sample with Im z1, Im z2 in [lo, hi] and y1 y2 - N(y) >= margin."""
    y1, y2 = rng.uniform(lo, hi, 2)
    direction = rng.normal(size=8)
    direction /= np.linalg.norm(direction)
    room = max(y1 * y2 - margin, 0.0)
    y = direction * np.sqrt(room) * rng.uniform(0, 1)
    x = rng.normal(size=8) * 0.5
    return OrthPoint(complex(rng.normal() * 0.5, y1), complex(rng.normal() * 0.5, y2), x + 1j * y)


def generator_family(rng: np.random.Generator | None = None, count: int = 0) -> list[GeneratorSpec]:
    """The generator system over the f-basis plus ``count`` random extras."""
    specs = [GeneratorSpec.inversion(),
             GeneratorSpec.translation_upper(1, 0),
             GeneratorSpec.translation_upper(0, 1),
             GeneratorSpec.translation_upper(-1, 2)]
    for i in range(8):
        e = tuple(int(i == k) for k in range(8))
        specs.append(GeneratorSpec.translation_upper(0, 0, e))
        specs.append(GeneratorSpec.translation_lower(e))
    if rng is not None:
        for _ in range(count):
            oc = tuple(int(x) for x in rng.integers(-1, 2, 8))
            if rng.random() < 0.5:
                specs.append(GeneratorSpec.translation_upper(int(rng.integers(-2, 3)),
                                                             int(rng.integers(-2, 3)), oc))
            else:
                specs.append(GeneratorSpec.translation_lower(oc))
    return specs


@dataclass
class GeneratorData:
    spec: GeneratorSpec
    matrix: CliffordMatrix
    orth: np.ndarray
    symplectic: np.ndarray


@lru_cache(maxsize=256)
def generator_data(spec: GeneratorSpec) -> GeneratorData:
    m = build_generator(spec, check=False)
    ok, o = is_spin(m)
    if not ok:
        raise EmbeddingError(f"{spec} is not a spin element")
    return GeneratorData(spec, m, o, embed_J(m, check=False))
