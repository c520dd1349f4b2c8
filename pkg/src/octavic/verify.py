"""Invariant suites shared by the command line and the report."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import clifford, cusps, embedding, octonion, theta_numeric


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{self.name}: {'pass' if self.passed else 'FAIL'}"


@dataclass
class SuiteResult:
    suite: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [{"name": c.name, "status": "pass" if c.passed else "fail",
                            **({"detail": c.detail} if c.detail else {})} for c in self.checks]}


# ---- random integral data -----------------------------------------------------

def random_fcoords(rng, n, lo=-3, hi=3) -> np.ndarray:
    return rng.integers(lo, hi + 1, size=(n, 8))


def random_even_integral(rng, terms: int = 4, span: int = 2) -> clifford.CliffordElement:
    """Random even element of the integral order over f-basis monomials."""
    sp = embedding.LATTICE_SPACE
    masks = [m for m in range(256) if bin(m).count("1") % 2 == 0]
    data = {}
    for _ in range(terms):
        m = masks[int(rng.integers(len(masks)))]
        data[m] = data.get(m, 0) + int(rng.integers(-span, span + 1))
    return embedding.from_lattice_coordinates(clifford.CliffordElement(sp, data))


# ---- algebra ------------------------------------------------------------------------

def suite_algebra(seed: int = 0, pairs: int = 10_000, hom_pairs: int = 100) -> SuiteResult:
    rng = np.random.default_rng(seed)
    checks = []
    t = octonion.MULT_TENSOR
    unit = all(t[0, i, i] == 1 and t[i, 0, i] == 1 for i in range(8))
    squares = all(t[i, i, 0] == -1 for i in range(1, 8))
    anti = all((t[i, j] == -t[j, i]).all() for i in range(1, 8) for j in range(1, 8) if i != j)
    checks.append(Check("multiplication table unit and antisymmetry", unit and squares and anti))

    x = random_fcoords(rng, pairs)
    y = random_fcoords(rng, pairs)
    xy = octonion.fmul(x, y)
    s = octonion.GRAM_S
    nx = np.einsum("ni,ij,nj->n", x, s, x) // 2
    ny = np.einsum("ni,ij,nj->n", y, s, y) // 2
    nxy = np.einsum("ni,ij,nj->n", xy, s, xy) // 2
    bad = np.flatnonzero(nxy != nx * ny)
    checks.append(Check("N(xy)=N(x)N(y)", not len(bad),
                        {"pairs": pairs} if not len(bad) else
                        {"x": x[bad[0]].tolist(), "y": y[bad[0]].tolist()}))

    det = round(np.linalg.det(s.astype(float)))
    even = bool((np.diag(s) % 2 == 0).all())
    posdef = bool(np.linalg.eigvalsh(s.astype(float)).min() > 0)
    checks.append(Check("S = 2FF' even unimodular positive definite",
                        det == 1 and even and posdef, {"det": det}))

    counts = [len(octonion.vectors_by_norm(n)) for n in (1, 2)]
    checks.append(Check("E8 shells 240, 2160", counts == [240, 2160], {"counts": counts}))

    hom_ok, inv_ok = True, True
    for _ in range(hom_pairs):
        a, b = random_even_integral(rng), random_even_integral(rng)
        ha, hb = embedding.even_hom_to_m8(a), embedding.even_hom_to_m8(b)
        if not (embedding.even_hom_to_m8(a * b) == ha.dot(hb)).all():
            hom_ok = False
        if not (embedding.even_hom_to_m8(clifford.cl_involution(a)) == ha.T).all():
            inv_ok = False
    checks.append(Check("even homomorphism is multiplicative", hom_ok, {"pairs": hom_pairs}))
    checks.append(Check("even homomorphism intertwines involution and transpose", inv_ok))
    return SuiteResult("algebra", checks)


# ---- embedding ---------------------------------------------------------------------------

def mod2_trivial_elements() -> list:
    """Elements of the level-two spin group: doubled translations, the
    square of the inversion and a conjugate."""
    out = []
    for spec in embedding.generator_family()[1:]:
        out.append((f"{spec.kind} {spec.h1} {spec.h2} {spec.octave} doubled",
                    embedding.build_generator(spec.doubled())))
    inv = embedding.build_generator(embedding.GeneratorSpec.inversion())
    out.append(("inversion squared", inv @ inv))
    tl = embedding.build_generator(
        embedding.GeneratorSpec.translation_lower((0, 1, 0, 0, 1, 0, 0, 0)).doubled())
    out.append(("inversion conjugate of a doubled lower translation",
                inv @ tl @ embedding.star_involution(inv)))
    return out


def suite_embedding(seed: int = 0, calibration: str | None = None,
                    samples: int = 200, tol: float = 1e-9) -> SuiteResult:
    rng = np.random.default_rng(seed)
    checks = []
    cal = calibration or theta_numeric.discover_calibration(seed)
    checks.append(Check("chart calibration", cal in embedding.CALIBRATIONS, {"calibration": cal}))

    specs = embedding.generator_family(rng, 12)
    failures = []
    for spec in specs:
        m = embedding.build_generator(spec, check=False)
        ok, o = embedding.is_spin(m)
        if not ok:
            failures.append(("spin", spec))
            continue
        if not embedding.is_hermitian_symplectic(m):
            failures.append(("hermitian symplectic", spec))
        oo = np.asarray(o, dtype=object)
        if not (oo.T.dot(embedding.GRAM_V).dot(oo) == embedding.GRAM_V).all():
            failures.append(("orthogonal image", spec))
        lv = embedding.classify_level(embedding.embed_J(m, check=False))
        if not (lv.integral_symplectic and lv.igusa_12):
            failures.append(("theta group", spec))
    checks.append(Check("generators are spin, Hermitian symplectic, theta-group images",
                        not failures, {"first": str(failures[0])} if failures else
                        {"generators": len(specs)}))

    bad = []
    for name, g in mod2_trivial_elements():
        ok = embedding.is_one_mod2(g)
        c = embedding.conjugate_by_scaling(g, require_integral=False)
        ok = ok and embedding.is_integral_matrix(c) and embedding.is_spin(c)[0]
        ok = ok and embedding.classify_level(embedding.embed_J(c, check=False)).igusa_12
        ok = ok and embedding.classify_level(embedding.embed_J(g, check=False)).igusa_24
        if not ok:
            bad.append(name)
    checks.append(Check("level-two spin elements map into Igusa group [2,4]", not bad,
                        {"first": bad[0]} if bad else {}))

    worst, example = 0.0, None
    for k in range(samples):
        spec = specs[k % len(specs)]
        z = embedding.random_orth_point(rng)
        try:
            r = theta_numeric.equivariance_residual(spec, z, cal)
        except (embedding.EmbeddingError, theta_numeric.ThetaError) as exc:
            r, example = np.inf, {"spec": str(spec), "error": str(exc)}
        if r > worst:
            worst = r
            if r >= tol and example is None:
                example = {"spec": str(spec), "z1": str(z.z1), "z2": str(z.z2),
                           "zf": [str(c) for c in z.zf], "residual": r}
    checks.append(Check("equivariance of the point map", worst < tol,
                        {"max_residual": worst, "samples": samples} if worst < tol else example))
    return SuiteResult("embedding", checks)


# ---- cusps ----------------------------------------------------------------------------

def suite_cusps(seed: int = 0, matrix: cusps.CuspMatrix | None = None,
                lift_samples: int = 2000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    checks = []
    iso = cusps.enumerate_isotropic()
    with_zero = cusps.enumerate_isotropic(include_zero=True)
    rows = cusps.enumerate_cusp_R()
    checks.append(Check("isotropic classes 2079", len(iso) == 2079, {"count": len(iso)}))
    checks.append(Check("isotropic including zero 2^11+2^5", len(with_zero) == 2080,
                        {"count": len(with_zero)}))
    checks.append(Check("cusp representatives 2047", len(rows) == 2047, {"count": len(rows)}))

    if matrix is None:
        matrix = cusps.build_cusp_matrix()
    dens = matrix.denominators
    checks.append(Check("all denominators nonzero", bool((dens != 0).all()),
                        {"values": sorted(set(int(d) for d in dens))}))

    # the numerator does not depend on the lift of the characteristic
    bad = None
    for _ in range(lift_samples):
        k = int(rng.integers(len(rows)))
        a = int(rng.integers(cusps.N_COLS))
        h1, h2 = cusps.lift(a)
        o1, o2 = 2 * rng.integers(-2, 3, 8), 2 * rng.integers(-2, 3, 8)
        g1, g2 = h1 + o1, h2 + o2
        R = rows[k]
        val = cusps.ZERO_BYTE if not cusps.rg_even(R, (g1, g2)) else cusps.r_bracket(R, g1, g2) % 4
        if val != matrix.entries[k, a]:
            bad = {"row": k, "a": a, "offset": [o1.tolist(), o2.tolist()]}
            break
    checks.append(Check("numerator independent of the lift", bad is None, bad or {}))

    classes = {}
    for k, R in enumerate(rows):
        classes.setdefault(cusps.cusp_class(R), []).append(k)
    lut = np.array([1, 1j, -1, -1j])

    def normalized(k):
        e = matrix.entries[k]
        v = np.zeros(e.shape, dtype=complex)
        m = e != cusps.ZERO_BYTE
        v[m] = lut[e[m]]
        return v / dens[k]

    mismatch = None
    for cl, ks in classes.items():
        base = normalized(ks[0])
        for k in ks[1:]:
            if np.abs(normalized(k) - base).max() > 1e-15:
                mismatch = {"class": list(cl.v), "rows": [ks[0], k]}
                break
        if mismatch:
            break
    checks.append(Check("rows of one cusp class agree after normalization", mismatch is None,
                        mismatch or {"classes_hit": len(classes)}))
    return SuiteResult("cusps", checks)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "algebra": suite_algebra,
    "embedding": suite_embedding,
    "cusps": suite_cusps,
}
