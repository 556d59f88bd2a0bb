from itertools import product

from hypothesis import given, settings, strategies as st
import numpy as np

from twoperiodic import RingSpec, direct_sum, tensor
from twoperiodic.degreewise import (
    DegreewiseResolution, Oracle, Presentation, hilbert_function, left_nullspace, rank_mod_p,
)

from conftest import cyclic

P = 7


def brute_rank(A, p):
    """Rank over F_p by counting the image (tiny matrices only)."""
    A = np.asarray(A) % p
    rows, cols = A.shape
    image = {tuple((np.array(c) @ A) % p) for c in product(range(p), repeat=rows)}
    size, r = len(image), 0
    while p ** r < size:
        r += 1
    return r


matrices = st.integers(1, 3).flatmap(lambda r: st.integers(1, 3).flatmap(
    lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rank_and_left_nullspace(rows):
    A = np.array(rows, dtype=np.int64)
    r = rank_mod_p(A, P)
    assert r == brute_rank(A, P)
    N = left_nullspace(A, P)
    assert N.shape[0] == A.shape[0] - r
    if N.size:
        assert not ((N @ A) % P).any()
        assert rank_mod_p(N, P) == N.shape[0]


def test_hilbert_function_matches_series(node, mods):
    for M in mods.values():
        assert hilbert_function(node, M.degrees, M.relations, -3, 10) == \
            M.hilbert.coefficients(-3, 10)


def test_presentation_slices(node, mods):
    k = Presentation(node, mods["k"].degrees, mods["k"].relations)
    assert [k.dim(e) for e in range(-1, 4)] == [0, 1, 0, 0, 0]
    R = Presentation(node, [0], [])
    assert [R.dim(e) for e in range(0, 5)] == [1, 2, 2, 2, 2]


def test_degreewise_resolution(node, mods):
    res = DegreewiseResolution(node, mods["Mx"].degrees, mods["Mx"].relations, 4, 12)
    assert res.betti_numbers(4) == [1, 1, 1, 1, 1]


@given(st.lists(st.sampled_from(["x", "y", "x, y", "x+y", "x^2"]), min_size=1, max_size=2),
       st.lists(st.sampled_from(["x", "y", "x, y", "x+y", "y^2"]), min_size=1, max_size=2))
@settings(max_examples=10, deadline=None)
def test_oracle_tensor_and_tor_agree_with_groebner(a, b):
    from twoperiodic import tor
    ring = RingSpec(["x", "y"], ["x*y"], dim=1, minimal_primes=[["x"], ["y"]])
    M = direct_sum(*[cyclic(ring, *r.split(",")) for r in a])
    N = direct_sum(*[cyclic(ring, *r.split(",")) for r in b])
    oracle = Oracle(ring, max_degree=8)
    assert oracle.tensor_dims(M, N, 0, 8) == tensor(M, N).hilbert.coefficients(0, 8)
    for i in (1, 2):
        assert oracle.tor_dims(M, N, i, 0, 8) == tor(M, N, i).hilbert.coefficients(0, 8)
