"""Exact computations with graded modules over quotients of polynomial rings
over F_p, with machine checks of results on two-periodic modules."""

__version__ = "0.1.0"

from .core import DEFAULT_PRIME, PolyRing, PolynomialSyntaxError
from .fpmodule import (
    FPModule, GradedMap, HilbertData, Ideal, RingSpec, RingSpecError, StructuralError, Verdict,
    auslander_dual, cokernel, direct_sum, dual, fitting_ideal, hilbert, hom, image, is_isomorphic,
    kernel, minimalize, natural_map_alpha, natural_map_gamma, projective_equivalence, tensor,
)
from .resolution import (
    INFINITE_DEPTH, HomologyModule, MatrixFactorization, Resolution, depth, ext,
    is_totally_reflexive, is_two_periodic, module_from_mf, resolve, resolve_over_S, syzygy, tor,
)
from .invariants import (
    HypothesisError, NoNZDFound, classify_torsionless_reflexive, find_nzd,
    is_projectively_two_periodic, rank_report, theta, tor_rigidity_window, torsion_submodule,
    universal_pushforward,
)
from .verifier import TheoremReport, run_checker
