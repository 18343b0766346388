import math

import numpy as np
import pytest

from sparsega import Algebra, GenerationError

from oracle import dense


def close(a, b, tol=1e-12):
    """Compare two multivectors coefficient-wise through blade names."""
    names = {a.algebra.names_by_key[k] for k in a.keys()} | {b.algebra.names_by_key[k] for k in b.keys()}
    return all(np.allclose(a.coefficient(n), b.coefficient(n), atol=tol, rtol=tol) for n in names)


def test_gp_examples(vga2, pga2):
    assert (vga2.e1 * vga2.e1).items() == ((0, 1),)
    assert (pga2.e0 * pga2.e0).keys() == ()
    R, x = vga2.evenmv(name="R"), vga2.vector(name="x")
    assert [vga2.names_by_key[k] for k in (R * x).keys()] == ["e1", "e2"]


def test_wedge_and_contractions(vga2, rng):
    assert (vga2.e1 ^ vga2.e2).items() == ((3, 1),)
    assert (vga2.e1 ^ vga2.e1).keys() == ()
    assert vga2.lc(vga2.e12, vga2.e1).keys() == ()
    alg = Algebra(3, 1)
    u, v = alg.vector(rng.standard_normal(4)), alg.vector(rng.standard_normal(4))
    assert np.isclose((u | v).e, (u * v).e)


def test_wedge_is_metric_free_in_degenerate_algebra(pga2):
    assert (pga2.e0 ^ pga2.e1).items() == ((3, 1),)
    assert (pga2.e01 ^ pga2.e2).items() == ((7, 1),)


def test_regressive(pga2):
    x = pga2.vector([1.0, 2.0, 3.0])
    assert close(pga2.pss & x, x)
    P1 = pga2.vector([1.0, 0.5, -1.0]).dual()
    P2 = pga2.vector([1.0, -2.0, 0.25]).dual()
    L = P1 & P2
    assert all(g == 1 for g in map(int.bit_count, L.keys()))
    assert np.allclose((L ^ P1).values(), 0) and np.allclose((L ^ P2).values(), 0)


def test_regressive_antisymmetry(rng):
    alg = Algebra(3, 0, 1)
    d = alg.d
    for r, s in [(1, 2), (2, 2), (1, 3), (2, 3)]:
        a = alg.graded((r,), list(rng.standard_normal(math.comb(d, r))))
        b = alg.graded((s,), list(rng.standard_normal(math.comb(d, s))))
        sign = (-1) ** ((d - r) * (d - s))
        assert close(a & b, (b & a) * sign)


def test_sandwich_examples(vga2):
    x = vga2.vector([3.0, 4.0])
    assert close(vga2.scalar(1.0) >> x, x)
    R = vga2.evenmv([math.cos(0.3), math.sin(0.3)])
    assert (R >> x).type_number == 6


def test_projection_examples(vga2):
    a = vga2.vector([1.0, 1.0])
    b = vga2.vector([1.0, 0.0])
    assert close(a @ b, vga2.vector([1.0, 0.0]))
    assert close(b @ b, b)


def test_commutators(rng):
    alg = Algebra(3)
    a, b = alg.bivector(list(rng.standard_normal(3))), alg.bivector(list(rng.standard_normal(3)))
    assert np.allclose(alg.cp(a, a).values(), 0)
    assert close(alg.cp(a, b) + alg.acp(a, b), a * b)
    assert all(int.bit_count(k) == 2 for k in alg.cp(a, b).keys())


def test_reverse(vga2):
    mv = vga2.multivector(e=1, e1=2)
    assert (~mv).items() == mv.items()
    assert (~vga2.e12).items() == ((3, -1),)


def test_norms(vga2, rng):
    assert vga2.vector([3.0, 4.0]).norm().e == 5.0
    R = vga2.evenmv([1.0, 1.0])
    assert math.isclose(R.norm().e, math.sqrt(2))
    for _ in range(10):
        a = vga2.evenmv(list(rng.standard_normal(2)))
        assert math.isclose(a.normalized().norm().e, 1.0, rel_tol=1e-12)


def test_norm_undefined_for_study_numbers():
    alg = Algebra(3, 0, 1)
    with pytest.raises(GenerationError, match="norm undefined"):
        alg.evenmv(name="m").norm()
    with pytest.raises(GenerationError, match="not invertible"):
        alg.inv(alg.evenmv(name="m"))


def test_inverse(vga2, rng):
    assert close(vga2.e1.inv(), vga2.e1)
    alg = Algebra(3, 1)
    for _ in range(10):
        b = alg.vector(list(rng.standard_normal(4)))
        assert close(b * b.inv(), alg.scalar(1.0), tol=1e-10)


def test_division_matches_registered_projection(pga2, rng):
    proj = pga2.register(lambda a, b: (a | b) / b)
    P = pga2.vector([1.0, *rng.standard_normal(2)]).dual()
    L = pga2.vector(list(rng.standard_normal(3)))
    assert close(proj(P, L), (P | L) * L.inv())


def test_runtime_division_by_zero(vga2):
    with pytest.raises(ZeroDivisionError):
        vga2.vector([0.0, 0.0]).inv()


def test_sqrt(vga2, rng):
    assert close(vga2.scalar(1.0).sqrt(), vga2.scalar(1.0))
    r = vga2.e12.sqrt()
    assert close(r, vga2.evenmv([1 / math.sqrt(2), 1 / math.sqrt(2)]))
    assert close(r * r, vga2.e12 + 0.0)
    alg = Algebra(3)
    for _ in range(10):
        R = alg.evenmv(list(rng.standard_normal(4))).normalized()
        s = R.sqrt()
        assert close(s * s, R, tol=1e-12)
    with pytest.raises(GenerationError):
        vga2.vector([1.0, 2.0]).sqrt()
    with pytest.raises(ZeroDivisionError):
        vga2.scalar(-1.0).sqrt()


def test_dual_undual(rng):
    for sig in [(2, 0, 1), (3, 0, 1)]:
        alg = Algebra(*sig)
        x = alg.fullmv(list(rng.standard_normal(1 << alg.d)))
        assert close(x.dual().undual(), x, tol=0)
        assert x.dual().undual().items() == x.items()
    pga = Algebra(2, 0, 1)
    assert pga.vector([1, 2, 3]).dual().type_number == pga.bivector([0, 0, 0]).type_number
    assert (pga.scalar(1).dual()).items() == ((7, 1),)


def test_exp(vga2, pga2):
    assert close(vga2.bivector([0.0]).exp(), vga2.scalar(1.0))
    assert close((vga2.e12 * (math.pi / 2)).exp(), vga2.e12 + 0.0)
    assert close(pga2.e01.exp(), pga2.multivector(e=1, e01=1))
    alg = Algebra(3)
    with pytest.raises(GenerationError, match="simple"):
        alg.bivector(name="B").exp()


def test_zero_inputs_give_empty_kernel(vga2):
    z = vga2.multivector()
    out = z * z
    t, kernel = vga2.gp.operator_dict[(0, 0)]
    assert t == 0 and len(kernel) == 0 and out.keys() == ()


def test_vector_product_type(vga2):
    x = vga2.vector([1.0, 2.0])
    assert (x * x).type_number == 9


@pytest.mark.parametrize("sig", [(2, 0, 1)])
def test_exhaustive_sparsity_sweep(sig, rng):
    """All type pairs with at most 3 blades per input, against the dense oracle."""
    from itertools import combinations

    alg = Algebra(*sig)
    D = dense(*sig)
    subsets = [c for n in range(1, 4) for c in combinations(alg.order, n)]
    binary = ["gp", "op", "ip", "lc", "rc", "sp", "rp", "sw", "cp", "acp", "proj"]
    for name in binary:
        fn = getattr(alg, name)
        for ka in subsets[::3]:
            for kb in subsets[::5]:
                a = alg.make(ka, rng.standard_normal(len(ka)).tolist())
                b = alg.make(kb, rng.standard_normal(len(kb)).tolist())
                out = fn(a, b)
                ref = getattr(D, name)(D.from_mv(a), D.from_mv(b))
                got = D.from_mv(out)
                assert np.allclose(got, ref, atol=1e-12), (name, ka, kb)
