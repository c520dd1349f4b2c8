"""Generators of the integral spin group and their images in Sp(32, Z).

Run: python3 demos/02_spin_generators.py
"""
import numpy as np

from octavic import embedding as em
from octavic import theta_numeric as th
from octavic.octonion import GRAM_S
from octavic.verify import mod2_trivial_elements

for spec in em.generator_family()[:6]:
    m = em.build_generator(spec)
    ok, o = em.is_spin(m)
    lv = em.classify_level(em.embed_J(m))
    print(f"{spec.kind:18s} h1={spec.h1:2d} h2={spec.h2:2d} spin={ok} "
          f"hermitian_symplectic={em.is_hermitian_symplectic(m)} "
          f"level={lv.principal_level} theta={lv.igusa_12}")

# the inversion goes to [[0, S], [-S^-1, 0]] with S = diag(S8, S8)
j = em.to_int_matrix(em.embed_J(em.build_generator(em.GeneratorSpec.inversion())))
s16 = np.kron(np.eye(2, dtype=np.int64), GRAM_S)
print("J(inversion) upper right block is diag(S, S):", bool((j[:16, 16:] == s16).all()))

# level two: doubled translations land in the Igusa group [2,4]
for name, g in mod2_trivial_elements()[:4]:
    lv = em.classify_level(em.embed_J(g, check=False))
    print(f"{name:45s} level={lv.principal_level} igusa_24={lv.igusa_24}")

# the point map commutes with the two actions
rng = np.random.default_rng(1)
z = em.random_orth_point(rng)
for spec in em.generator_family()[:4]:
    print(f"equivariance residual for {spec.kind}: "
          f"{th.equivariance_residual(spec, z):.1e}")
