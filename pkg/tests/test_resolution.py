from hypothesis import given, settings, strategies as st
import pytest

from twoperiodic import (
    INFINITE_DEPTH, FPModule, MatrixFactorization, RingSpec, StructuralError, depth, direct_sum,
    dual, ext, is_isomorphic, is_totally_reflexive, is_two_periodic, module_from_mf, resolve,
    resolve_over_S, syzygy, tor,
)
from twoperiodic.degreewise import Oracle, DegreewiseResolution

from conftest import cyclic

CUSP_A = [["y", "x^2"], ["x", "y"]]
CUSP_B = [["y", "-x^2"], ["-x", "y"]]
CONE_A = [["x", "z"], ["z", "y"]]
CONE_B = [["y", "-z"], ["-z", "x"]]


def cusp_module(cusp):
    return module_from_mf(MatrixFactorization.parse(cusp.S, CUSP_A, CUSP_B, "y^2 - x^3"), cusp)


# -- resolutions -------------------------------------------------------------------------

def test_resolution_of_worked_example(node, mods):
    res = resolve(mods["Mx"], 4)
    assert res.betti_numbers(4) == [1, 1, 1, 1, 1]
    mats = [res.format_matrix(i) for i in range(1, 5)]
    assert [m[0][0].lstrip("-") for m in mats] == ["x", "y", "x", "y"]
    assert res.is_minimal(4) and res.is_complex(4)


def test_resolution_of_free_and_residue_field(node, mods):
    res = resolve(node.R, 3)
    assert res.betti_numbers(3) == [1, 0, 0, 0]
    assert res.projective_dimension == 0
    k = resolve(mods["k"], 4)
    # over the node the Betti numbers of k are 1, 2, 2, 2, ...
    assert k.betti_numbers(4) == [1, 2, 2, 2, 2]
    assert k.is_complex(4) and k.is_minimal(4)
    oracle = DegreewiseResolution(node, mods["k"].degrees, mods["k"].relations, 4, 12)
    assert oracle.betti_numbers(4) == [1, 2, 2, 2, 2]


def test_resolution_over_polynomial_ring(node, mods):
    assert resolve_over_S(mods["Mx"]).betti_numbers(2) == [1, 1, 0]
    r = resolve_over_S(node.R)
    assert r.betti_numbers(2) == [1, 1, 0]
    assert r.degrees(1) == (2,)
    assert resolve_over_S(mods["k"]).betti_numbers(2) == [1, 2, 1]


def test_syzygies(node, mods):
    Mx = mods["Mx"]
    assert is_isomorphic(syzygy(Mx, 1), cyclic(node, "y", degree=1))
    assert syzygy(node.R, 1).is_zero
    assert is_isomorphic(syzygy(Mx, 2), cyclic(node, "x", degree=2))


def test_depths(node, mods):
    assert depth(node.R) == 1
    assert depth(mods["k"]) == 0
    assert depth(mods["Mx"]) == 1
    assert depth(FPModule(node, [0], [{(node.S.one, 0): 1}])) == INFINITE_DEPTH


def test_periodicity(node, mods, cusp):
    assert is_two_periodic(mods["Mx"])
    assert is_two_periodic(mods["Mxy"])
    assert not is_two_periodic(mods["k"])
    assert is_two_periodic(cusp_module(cusp))
    with pytest.raises(StructuralError):
        is_two_periodic(FPModule(node, [0], [{(node.S.one, 0): 1}]))


# -- matrix factorizations -----------------------------------------------------------------

def test_matrix_factorizations(node, cusp, cone):
    Mx = module_from_mf(MatrixFactorization.parse(node.S, [["x"]], [["y"]], "x*y"), node)
    assert is_isomorphic(Mx, cyclic(node, "x"))
    Mc = cusp_module(cusp)
    assert Mc.degrees == (0, 1)
    assert resolve(Mc, 4).betti_numbers(4) == [2] * 5
    Mk = module_from_mf(MatrixFactorization.parse(cone.S, CONE_A, CONE_B, "x*y - z^2"), cone)
    assert resolve(Mk, 4).betti_numbers(4) == [2] * 5
    assert depth(Mk) == 2
    with pytest.raises(StructuralError):
        MatrixFactorization.parse(cusp.S, CUSP_A, CUSP_A, "y^2 - x^3")
    with pytest.raises(StructuralError):
        module_from_mf(MatrixFactorization.parse(node.S, [["x"]], [["x"]], "x^2"), node)


# -- Tor and Ext ----------------------------------------------------------------------------

@pytest.mark.parametrize("a, b, tors, exts", [
    ("Mx", "Mx", [1, 0, 1], [0, 1, 0]),
    ("Mx", "My", [0, 1, 0], [1, 0, 1]),
    ("Mx", "N", [0, 0, 0], [0, 0, 0]),
    ("Mx", "R", [0, 0, 0], [0, 0, 0]),
    ("R", "N", [0, 0, 0], [0, 0, 0]),
])
def test_tor_ext_values(mods, a, b, tors, exts):
    M, N = mods[a], mods[b]
    assert [tor(M, N, i).length for i in (1, 2, 3)] == tors
    assert [ext(M, N, i).length for i in (1, 2, 3)] == exts


def test_tor_zero_is_tensor(mods):
    from twoperiodic import tensor, hom
    assert tor(mods["Mx"], mods["N"], 0).hilbert == tensor(mods["Mx"], mods["N"]).hilbert
    assert ext(mods["Mx"], mods["N"], 0).hilbert == hom(mods["Mx"], mods["N"]).hilbert


NODE_MODULES = ["Mx", "My", "Mxy", "k", "N", "Mxy_dual"]


@pytest.mark.parametrize("a", NODE_MODULES)
@pytest.mark.parametrize("b", NODE_MODULES)
def test_tor_is_balanced(mods, a, b):
    for i in (1, 2):
        assert tor(mods[a], mods[b], i).hilbert == tor(mods[b], mods[a], i).hilbert


@pytest.mark.parametrize("a", ["Mx", "Mxy", "Mxy_dual"])
@pytest.mark.parametrize("b", NODE_MODULES)
def test_tor_ext_periodic_for_periodic_modules(mods, a, b):
    M, N = mods[a], mods[b]
    for i in (1, 2):
        t, t2 = tor(M, N, i).hilbert, tor(M, N, i + 2).hilbert
        assert t2 == t or t.twist_to(t2) is not None
        e, e2 = ext(M, N, i).hilbert, ext(M, N, i + 2).hilbert
        assert e2 == e or e.twist_to(e2) is not None


def test_tor_ext_against_oracle_on_cusp(cusp):
    Mc = cusp_module(cusp)
    k = cyclic(cusp, "x", "y")
    oracle = Oracle(cusp, max_degree=12)
    for M, N in ((Mc, Mc), (Mc, k), (k, Mc), (Mc, dual(Mc))):
        for i in range(4):
            assert oracle.tor_dims(M, N, i, -12, 12) == tor(M, N, i).hilbert.coefficients(-12, 12)
            assert oracle.ext_dims(M, N, i, -12, 12) == ext(M, N, i).hilbert.coefficients(-12, 12)


# -- total reflexivity ------------------------------------------------------------------------

def test_total_reflexivity(node, mods, cone):
    v = is_totally_reflexive(node.R)
    assert v and v.exact
    v = is_totally_reflexive(mods["Mx"])
    assert v and v.exact
    assert not is_totally_reflexive(mods["k"])
    Mk = module_from_mf(MatrixFactorization.parse(cone.S, CONE_A, CONE_B, "x*y - z^2"), cone)
    assert is_totally_reflexive(Mk)


@given(st.lists(st.sampled_from(["x", "y", "x, y", "x+y", "x^2, y"]), min_size=1, max_size=3),
       st.integers(1, 2))
@settings(max_examples=12, deadline=None)
def test_resolutions_are_minimal_complexes(rels, i):
    ring = RingSpec(["x", "y"], ["x*y"], dim=1, minimal_primes=[["x"], ["y"]])
    M = direct_sum(*[cyclic(ring, *r.split(",")) for r in rels])
    res = resolve(M, 3)
    assert res.is_complex(3) and res.is_minimal(3)
    # the Hilbert series of a syzygy matches the alternating sum along the resolution
    h = M.hilbert
    for j in range(i):
        h = ring.free(res.degrees(j)).hilbert - h
    assert syzygy(M, i).hilbert == h
