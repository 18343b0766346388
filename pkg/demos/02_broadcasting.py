"""One array-valued sandwich against a Python loop of scalar sandwiches.

Run: python3 demos/02_broadcasting.py
"""
import time

import numpy as np

from sparsega import Algebra

alg = Algebra(2, 0, 1)
rng = np.random.default_rng(0)
n = 10_000

# A point cloud is a single multivector whose coefficients are arrays.
points = alg.vector(np.vstack([np.ones(n), rng.uniform(-1, 1, (2, n))])).dual()
R = (alg.e12 * 0.5).exp()  # rotation by 1 radian about the origin

t0 = time.perf_counter()
rotated = R >> points
batched = time.perf_counter() - t0

t0 = time.perf_counter()
looped = [R >> p for p in points]
loop = time.perf_counter() - t0

err = max(
    float(np.max(np.abs(rotated.coefficient(name) - [p.coefficient(name) for p in looped])))
    for name in ("e01", "e02", "e12")
)
print(f"{n} points: batched {batched * 1e3:.2f} ms, loop {loop * 1e3:.1f} ms, max difference {err:.1e}")

# Rotating by 1 radian keeps distances to the origin.
before = points.undual()
after = rotated.undual()
r0 = np.hypot(before.e1, before.e2)
r1 = np.hypot(after.e1 / after.e0, after.e2 / after.e0)
print("radius preserved:", np.allclose(r0, r1))
