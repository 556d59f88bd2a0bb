"""Torsion, rank, reflexivity, universal pushforwards and the theta pairing."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .core import vector_degree
from .fpmodule import (
    FPModule, GradedMap, Ideal, RingSpec, StructuralError, Verdict, auslander_dual, cokernel,
    dual_data, evaluation_map, fitting_ideal, is_injective, is_isomorphism, kernel, kernel_data,
    minimalize, multiplication_map, projective_equivalence,
)
from .resolution import ext, is_two_periodic, syzygy, tor


class NoNZDFound(RuntimeError):
    """No candidate element certifies the torsion computation."""


class HypothesisError(ValueError):
    def __init__(self, hypothesis: str, message: str = ""):
        super().__init__(f"{hypothesis}: {message}" if message else hypothesis)
        self.hypothesis = hypothesis


# -- non-zerodivisors and torsion ----------------------------------------------------

def _candidates(ring: RingSpec):
    S = ring.S
    seen, out = set(), []

    def push(f):
        f = ring.reduce(f)
        if not f or not S.is_homogeneous(f):
            return
        key = tuple(sorted(f.items()))
        if key not in seen:
            seen.add(key)
            out.append(f)

    base = list(ring.nzd_candidates)
    for f in base:
        push(f)
    variables = [S.var(i) for i in range(S.nvars)]
    for v in variables:
        push(v)
    # sums of two variables of equal weight
    for i in range(S.nvars):
        for j in range(i + 1, S.nvars):
            if S.weights[i] == S.weights[j]:
                push(S.add(variables[i], variables[j]))
    for f, g in combinations_with_replacement(base, 2):
        push(S.mul(f, g))
    return out


def _projective_after_inverting(M: FPModule, u: dict) -> bool:
    """M[1/u] is projective: every Fitting ideal becomes idempotent after inverting u."""
    for r in range(M.rank):
        F = fitting_ideal(M, r)
        if F.is_zero or F.is_unit:
            continue
        if not F.product(F).saturate(u) == F.saturate(u):
            return False
    return True


def find_nzd(ring: RingSpec, M: FPModule) -> dict:
    """A homogeneous non-zerodivisor u of R with M[1/u] projective."""
    M = minimalize(M)

    def build():
        for u in _candidates(ring):
            if ring.is_nzd(u) and _projective_after_inverting(M, u):
                return u
        raise NoNZDFound("no candidate non-zerodivisor makes the module projective after "
                         "inverting it; add candidates to the ring's nzd_candidates")
    return M.cached(("nzd",), build)


@dataclass
class TorsionReport:
    module: FPModule = field(repr=False)
    torsion: FPModule = field(repr=False)
    u: dict
    exponent: int
    generators: list = field(repr=False)

    @property
    def length(self):
        return self.torsion.length

    @property
    def is_zero(self) -> bool:
        return self.torsion.is_zero

    def quotient(self) -> FPModule:
        """M / T(M)."""
        M = self.module
        return FPModule(M.ring, M.degrees, list(M.relations) + list(self.generators), check=False)


def torsion_submodule(M: FPModule) -> TorsionReport:
    """T(M) = union of (0 :_M u^k) for a certified non-zerodivisor u."""
    M = minimalize(M)

    def build():
        ring = M.ring
        u = find_nzd(ring, M)
        S = ring.S
        k = 1
        prev = kernel_data(multiplication_map(M, u))
        while True:
            nxt = kernel_data(multiplication_map(M, S.power(u, k + 1)))
            if nxt.module.hilbert == prev.module.hilbert:
                return TorsionReport(M, prev.module, u, k, prev.gens)
            prev = nxt
            k += 1
    return M.cached(("torsion",), build)


# -- rank -------------------------------------------------------------------------

@dataclass
class RankReport:
    has_rank: bool
    rank: int | None
    local_ranks: list
    generically_free: bool

    def to_json(self):
        return {"has_rank": self.has_rank, "rank": self.rank,
                "local_ranks": self.local_ranks, "generically_free": self.generically_free}


def rank_report(M: FPModule) -> RankReport:
    """Rank and local ranks at the declared minimal primes (reduced rings only)."""
    ring = M.ring
    if not ring.minimal_primes:
        raise HypothesisError("minimal_primes", "the ring declares no minimal primes")
    if ring.is_reduced is False:
        raise HypothesisError("reduced_ring", "rank computations need a reduced ring")
    M = minimalize(M)

    def build():
        fitts = [fitting_ideal(M, r) for r in range(M.rank + 1)]
        r0 = next(r for r, F in enumerate(fitts) if not F.is_zero)
        has_rank = fitts[r0].annihilator().is_zero
        local = []
        for idx in range(len(ring.minimal_primes)):
            local.append(next(r for r, F in enumerate(fitts)
                              if not all(ring.in_prime(idx, g) for g in F.gens)))
        # over a reduced ring a Fitting ideal inside a minimal prime vanishes locally,
        # so the module is free of rank r_p at every p
        if has_rank and any(r != r0 for r in local):
            raise StructuralError("internal: rank disagrees with local ranks")
        return RankReport(has_rank, r0 if has_rank else None, local, True)
    return M.cached(("rank",), build)


# -- reflexivity and pushforwards -------------------------------------------------------

@dataclass
class ReflexivityReport:
    torsionless: bool
    reflexive: bool
    ext1_DM: int | None
    ext2_DM: int | None
    consistent: bool

    def to_json(self):
        return dict(self.__dict__)


def classify_torsionless_reflexive(M: FPModule) -> ReflexivityReport:
    """Compare the evaluation map with Ext^1, Ext^2 of the Auslander dual against R."""
    M = minimalize(M)

    def build():
        R = M.ring.R
        ev = evaluation_map(M)
        inj = is_injective(ev)
        bij = inj and is_isomorphism(ev)
        D = auslander_dual(M)
        e1 = ext(D, R, 1)
        e2 = ext(D, R, 2)
        torsionless = e1.is_zero
        reflexive = torsionless and e2.is_zero
        consistent = (torsionless == inj) and (reflexive == bij)
        return ReflexivityReport(torsionless, reflexive, e1.length, e2.length, consistent)
    return M.cached(("reflexivity",), build)


def is_torsionless(M: FPModule) -> bool:
    return is_injective(evaluation_map(minimalize(M)))


def dual_embedding(M: FPModule) -> GradedMap:
    """M -> R^n, x |-> (f_1(x), ..., f_n(x)) for minimal generators f_k of M*."""
    M = minimalize(M)

    def build():
        ring = M.ring
        D = dual_data(M)
        degs = [-vector_degree(ring.S, phi, D.ambient) for phi in D.gens]
        target = ring.free(degs)
        cols = []
        for i in range(M.rank):
            v = {}
            for k, phi in enumerate(D.gens):
                for (m, idx), c in phi.items():
                    if idx == i:
                        v[(m, k)] = c
            cols.append(v)
        return GradedMap(M, target, cols, check=False)
    return M.cached(("dual_embedding",), build)


def universal_pushforward(M: FPModule) -> FPModule:
    """M_1 = coker(M -> R^n) along minimal generators of M*."""
    M = minimalize(M)
    f = dual_embedding(M)
    if not kernel(f).is_zero:
        raise HypothesisError("torsionless", "the module is not torsionless")
    return cokernel(f)


def is_projectively_two_periodic(M: FPModule, trials: int = 32, seed: int = 0) -> Verdict:
    return projective_equivalence(M, syzygy(M, 2), trials=trials, seed=seed)


# -- theta and rigidity -------------------------------------------------------------------

@dataclass
class ThetaValue:
    value: int
    n: int
    tor_lengths: dict          # i -> length of Tor_i, i = 1..4
    value_n2: int

    def to_json(self):
        return {"value": self.value, "n": self.n, "value_n2": self.value_n2,
                "tor_lengths": {str(i): v for i, v in sorted(self.tor_lengths.items())}}


def _ring_dimension(ring: RingSpec) -> int:
    return ring.dim if ring.dim is not None else ring.hilbert.dimension


def theta(M: FPModule, N: FPModule, trials: int = 32, seed: int = 0) -> ThetaValue:
    """lambda(Tor_2n) - lambda(Tor_2n-1), evaluated at n = 1 and re-checked at n = 2."""
    ring = M.ring
    if _ring_dimension(ring) != 1:
        raise HypothesisError("ring_dimension_one", "theta needs a one-dimensional ring")
    if M.is_zero:
        raise HypothesisError("two_periodic", "the zero module")
    if not is_two_periodic(M, trials=trials, seed=seed):
        raise HypothesisError("two_periodic", "M is not two-periodic")
    try:
        gfree = rank_report(M).generically_free
    except HypothesisError as e:
        raise HypothesisError("generically_free", str(e)) from None
    if not gfree:
        raise HypothesisError("generically_free", "M is not free on the minimal primes")
    lengths = {}
    for i in range(1, 5):
        L = tor(M, N, i).length
        if L is None:
            raise HypothesisError("finite_tor_length", f"Tor_{i} has infinite length")
        lengths[i] = L
    v1 = lengths[2] - lengths[1]
    v2 = lengths[4] - lengths[3]
    if v1 != v2:
        raise StructuralError(f"theta depends on n ({v1} != {v2})")
    return ThetaValue(v1, 1, lengths, v2)


@dataclass
class RigidityReport:
    tor1_length: int | None
    tor2_length: int | None
    tor1_zero: bool
    tor2_zero: bool

    @property
    def tor_independent(self) -> bool:
        return self.tor1_zero and self.tor2_zero

    @property
    def rigid(self) -> bool:
        # with Tor_i = Tor_{i+2}, vanishing at one index forces vanishing at every later
        # index only if both Tor_1 and Tor_2 vanish together
        return self.tor1_zero == self.tor2_zero

    def to_json(self):
        return {"tor1_length": self.tor1_length, "tor2_length": self.tor2_length,
                "tor_independent": self.tor_independent, "rigid": self.rigid}


def tor_rigidity_window(M: FPModule, N: FPModule, trials: int = 32, seed: int = 0) -> RigidityReport:
    if not is_two_periodic(M, trials=trials, seed=seed):
        raise HypothesisError("two_periodic", "M is not two-periodic")
    t1, t2 = tor(M, N, 1), tor(M, N, 2)
    return RigidityReport(t1.length, t2.length, t1.is_zero, t2.is_zero)
