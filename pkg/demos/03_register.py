"""Registered expressions: pipeline mode against symbolic (fused) mode.

Run: python3 demos/03_register.py
"""
import numpy as np

from sparsega import Algebra
from sparsega.bench import bench_projection, table

alg = Algebra(2, 0, 1)


@alg.register
def project(a, b):
    return (a | b) / b


@alg.register(symbolic=True)
def project_fused(a, b):
    return (a | b) / b


point = alg.vector([1.0, 0.3, -0.4]).dual()
line = alg.vector([0.5, 1.0, 2.0])

print("unregistered:", (point | line) / line)
print("pipeline:    ", project(point, line))
print("symbolic:    ", project_fused(point, line))

(types, plan), = project.cache.items()
print(f"\npipeline for types {types} replays {len(plan)} cached kernels")
(_, fused), = project_fused.cache.items()
print("the fused kernel:")
print(fused.kernel.source())

# Array inputs go through the same kernels.
xs = np.linspace(-1, 1, 5)
cloud = alg.vector([np.ones(5), xs, xs**2]).dual()
print("\nprojected cloud e12 coefficients:", project_fused(cloud, line).e12)

print()
print(table(bench_projection(repeats=500)))
