"""The restricted theta sum on the tube domain against the Siegel theta
series evaluated at the embedded point.

Run: python3 demos/04_theta_restriction.py
"""
import numpy as np

from octavic import embedding as em
from octavic import theta_numeric as th

rng = np.random.default_rng(3)
bound = th.TruncationBound(4, 4)
# tail_bound covers the omitted lattice pairs; it is only sharp once Im z is large

for a in (0, 0x0101, 0x2a07):
    z = em.random_orth_point(rng, lo=2.5, hi=3.5, margin=4.0)
    r = th.theta_restricted(a, z, bound, with_tail=True)
    s = th.theta_siegel(a, em.j_point(z), bound)
    print(f"a={a:#06x}  restricted={r.value:.12f}  siegel={s:.12f}  "
          f"|diff|={abs(r.value - s):.1e}  tail<={r.tail_bound:.1e}  terms={r.terms}")

# further up the imaginary axis only the zero vector of class 0 survives
far = em.OrthPoint(15j, 15j, np.zeros(8))
print("theta_0 at 15i:", th.theta_restricted(0, far, bound))
print("theta_a at 15i for a nonzero characteristic:", abs(th.theta_restricted(0x0100, far, bound)))
