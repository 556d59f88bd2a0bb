from pathlib import Path

import pytest

from twoperiodic import FPModule, RingSpec, direct_sum, dual

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"


def cyclic(ring, *gens, degree=0):
    """R/(gens) on one generator of the given degree."""
    return FPModule(ring, [degree], [{(m, 0): c for m, c in ring.parse(g).items()} for g in gens])


def node_ring():
    return RingSpec(["x", "y"], ["x*y"], dim=1, minimal_primes=[["x"], ["y"]],
                    nzd_candidates=["x+y"], name="node")


@pytest.fixture(scope="session")
def node():
    return node_ring()


@pytest.fixture(scope="session")
def mods(node):
    Mx = cyclic(node, "x")
    My = cyclic(node, "y")
    Mxy = direct_sum(Mx, My)
    return {
        "R": node.R,
        "Mx": Mx,
        "My": My,
        "Mxy": Mxy,
        "Mxy_dual": dual(Mxy),
        "k": cyclic(node, "x", "y"),
        "N": cyclic(node, "x+y"),
    }


@pytest.fixture(scope="session")
def cusp():
    return RingSpec(["x", "y"], ["y^2 - x^3"], weights=[2, 3], dim=1,
                    minimal_primes=[["y^2 - x^3"]], nzd_candidates=["x"], name="cusp")


@pytest.fixture(scope="session")
def cone():
    return RingSpec(["x", "y", "z"], ["x*y - z^2"], dim=2, minimal_primes=[["x*y - z^2"]],
                    nzd_candidates=["x"], name="cone")


@pytest.fixture(scope="session")
def polyring():
    return RingSpec(["x", "y", "z"], name="S")
