"""How a sandwich kernel is generated, cached and reused.

Run: python3 demos/01_codegen_walkthrough.py
"""
from sparsega import Algebra

alg = Algebra(2)

# Symbolic inputs: every coefficient is a named symbol.
R = alg.evenmv(name="a")
x = alg.vector(name="b")
print("R =", R, "  type number", R.type_number)
print("x =", x, "  type number", x.type_number)

# The first call for a pair of types builds the kernel symbolically.
y = R >> x
print("R x ~R =", y)

out_type, kernel = alg.sw.operator_dict[(R.type_number, x.type_number)]
print(f"\ncached under {(R.type_number, x.type_number)} -> output type {out_type}")
print(kernel.source())
print(f"{kernel.count('mul')} multiplications, {kernel.count('add', 'sub')} additions/subtractions")

# Numeric inputs of the same types hit the cache; nothing is regenerated.
gens = alg.sw.generations
rot = (alg.e12 * 0.25).exp()
print("\nrotated e1:", rot >> alg.vector([1.0, 0.0]))
assert alg.sw.generations == gens

# Null basis vectors are pruned at generation time: e0*e0 = 0 in 2D PGA.
pga = Algebra(2, 0, 1)
print("\n2D PGA vector * vector:")
print(pga.gp.get_or_generate((pga.vector(name="a").type_number,) * 2)[1].source())
