from hypothesis import given, settings, strategies as st
import pytest

from twoperiodic import (
    HypothesisError, NoNZDFound, RingSpec, classify_torsionless_reflexive, direct_sum, dual,
    find_nzd, is_isomorphic, is_projectively_two_periodic, rank_report, tensor, theta,
    tor_rigidity_window, torsion_submodule, universal_pushforward,
)
from twoperiodic.degreewise import Oracle
from twoperiodic.fpmodule import ideal_module

from conftest import cyclic
from test_resolution import cusp_module


def test_find_nzd(node, mods, cusp):
    assert find_nzd(node, mods["Mx"]) == node.parse("x+y")
    assert not node.is_nzd(node.parse("x"))
    u = find_nzd(cusp, cusp_module(cusp))
    assert cusp.is_nzd(u)


def test_torsion_examples(node, mods):
    assert torsion_submodule(mods["Mx"]).is_zero
    T = torsion_submodule(mods["k"])
    assert T.length == 1
    assert T.quotient().is_zero
    M = mods["Mxy"]
    assert torsion_submodule(tensor(M, dual(M))).length == 2


def test_torsion_matches_oracle(node, mods):
    oracle = Oracle(node, max_degree=10)
    for name in ("Mx", "k", "Mxy", "N"):
        M = mods[name]
        for other in ("Mx", "Mxy_dual", "k"):
            X = tensor(M, mods[other])
            T = torsion_submodule(X)
            assert oracle.torsion_dims(X, T.u, -4, 10) == T.torsion.hilbert.coefficients(-4, 10)


def test_torsion_refused_without_certificate():
    ring = RingSpec(["x", "y"], ["x^2"], dim=1, minimal_primes=[["x"]], nzd_candidates=["y"])
    with pytest.raises(NoNZDFound):
        torsion_submodule(ideal_module(ring, ["x"]))


@given(st.lists(st.sampled_from(["x", "y", "x, y", "x+y", "x^2", "y^2, x"]), min_size=1, max_size=3))
@settings(max_examples=12, deadline=None)
def test_torsion_is_idempotent(rels):
    ring = RingSpec(["x", "y"], ["x*y"], dim=1, minimal_primes=[["x"], ["y"]],
                    nzd_candidates=["x+y"])
    M = direct_sum(*[cyclic(ring, *r.split(",")) for r in rels])
    T = torsion_submodule(M)
    # T(T(M)) = T(M) and M / T(M) is torsion-free
    assert torsion_submodule(T.torsion).torsion.hilbert == T.torsion.hilbert
    assert torsion_submodule(T.quotient()).is_zero
    assert T.quotient().hilbert == M.hilbert - T.torsion.hilbert


def test_rank_examples(node, mods):
    r = rank_report(mods["Mx"])
    assert not r.has_rank and r.rank is None and r.local_ranks == [1, 0]
    assert r.generically_free
    r = rank_report(mods["Mxy"])
    assert r.has_rank and r.rank == 1
    assert rank_report(node.free([0, 0])).rank == 2


def test_rank_refused_on_nonreduced_ring():
    ring = RingSpec(["x", "y"], ["x^2"], dim=1, minimal_primes=[["x"]], nzd_candidates=["y"])
    with pytest.raises(HypothesisError) as info:
        rank_report(ideal_module(ring, ["x"]))
    assert info.value.hypothesis == "reduced_ring"


def test_reflexivity_classification(node, mods):
    r = classify_torsionless_reflexive(mods["Mx"])
    assert r.torsionless and r.reflexive and r.consistent
    r = classify_torsionless_reflexive(mods["k"])
    assert not r.torsionless and not r.reflexive and r.consistent
    r = classify_torsionless_reflexive(node.R)
    assert r.torsionless and r.reflexive


def test_universal_pushforward(node, mods):
    assert universal_pushforward(node.R).is_zero
    assert is_isomorphic(universal_pushforward(mods["Mx"]), mods["My"], allow_twist=True)
    target = direct_sum(mods["My"], mods["Mx"])
    assert is_isomorphic(universal_pushforward(mods["Mxy"]), target, allow_twist=True)
    with pytest.raises(HypothesisError):
        universal_pushforward(mods["k"])


def test_projective_periodicity(mods):
    assert is_projectively_two_periodic(mods["Mx"])
    assert is_projectively_two_periodic(dual(mods["Mx"]))
    assert not is_projectively_two_periodic(mods["k"])


def test_theta_values(node, mods):
    assert theta(mods["Mx"], mods["My"]).value == 1
    assert theta(mods["Mx"], mods["Mx"]).value == -1
    assert theta(mods["Mx"], node.R).value == 0
    th = theta(mods["Mxy"], mods["Mxy_dual"])
    assert th.value == 0 and th.value_n2 == 0
    with pytest.raises(HypothesisError) as info:
        theta(mods["k"], mods["Mx"])
    assert info.value.hypothesis == "two_periodic"


def test_theta_requires_dimension_one(cone):
    from twoperiodic import MatrixFactorization, module_from_mf
    from test_resolution import CONE_A, CONE_B
    M = module_from_mf(MatrixFactorization.parse(cone.S, CONE_A, CONE_B, "x*y - z^2"), cone)
    with pytest.raises(HypothesisError) as info:
        theta(M, M)
    assert info.value.hypothesis == "ring_dimension_one"


def test_rigidity_window(mods):
    r = tor_rigidity_window(mods["Mx"], mods["N"])
    assert r.tor_independent
    r = tor_rigidity_window(mods["Mx"], mods["Mx"])
    assert (r.tor1_length, r.tor2_length) == (1, 0)
    r = tor_rigidity_window(mods["Mxy"], mods["Mxy_dual"])
    assert (r.tor1_length, r.tor2_length) == (2, 2)
