"""Machine checks of the two-periodic module theorems on concrete modules.

Each checker evaluates the named hypotheses, then both sides of the
conclusion, and returns a :class:`TheoremReport`.  Status rules:

* any hypothesis failed           -> ``hypothesis_not_met``
* any hypothesis undecided        -> ``inconclusive``
* conclusion holds                -> ``verified``
* conclusion fails                -> ``refuted``
* conclusion undecided            -> ``inconclusive``

The conclusion is evaluated even when a hypothesis fails, so reports also
show whether the statement would have held (``conclusion`` field).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fpmodule as fp
from .fpmodule import FPModule, Verdict
from .invariants import (
    HypothesisError, NoNZDFound, classify_torsionless_reflexive, is_projectively_two_periodic,
    is_torsionless, rank_report, theta, torsion_submodule, universal_pushforward,
)
from .resolution import (
    INFINITE_DEPTH, depth, ext, is_totally_reflexive, is_two_periodic, syzygy, tor,
)

VERIFIED = "verified"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

OK, FAIL, UNKNOWN = "verified", "failed", "inconclusive"


@dataclass
class TheoremReport:
    checker: str
    case: str
    hypotheses: dict = field(default_factory=dict)
    conclusion: str = "not_evaluated"      # "true", "false", "inconclusive"
    witnesses: dict = field(default_factory=dict)
    status: str = INCONCLUSIVE

    def to_json(self) -> dict:
        return {
            "checker": self.checker,
            "case": self.case,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "conclusion": self.conclusion,
            "witnesses": _jsonable(self.witnesses),
            "status": self.status,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return _jsonable(x.to_json())
    return x


class _Checker:
    """Shared hypothesis helpers; verdicts are cached per module."""

    def __init__(self, name, case, trials, seed):
        self.report = TheoremReport(name, case)
        self.trials = trials
        self.seed = seed

    @property
    def w(self):
        return self.report.witnesses

    def hyp(self, name, value):
        if value is True:
            value = OK
        elif value is False:
            value = FAIL
        self.report.hypotheses[name] = value
        return value

    def verdict(self, v: Verdict):
        return {"yes": OK, "no": FAIL}.get(v.status, UNKNOWN)

    # hypotheses ------------------------------------------------------------

    def nonzero(self, name, M):
        return self.hyp(name, not M.is_zero)

    def two_periodic(self, name, M):
        if M.is_zero:
            return self.hyp(name, FAIL)
        v = is_two_periodic(M, trials=self.trials, seed=self.seed)
        return self.hyp(name, self.verdict(v))

    def totally_reflexive(self, name, M):
        v = is_totally_reflexive(M, trials=self.trials, seed=self.seed)
        self.w[name] = v.to_json()
        return self.hyp(name, bool(v))

    def generically_free(self, name, M):
        try:
            r = rank_report(M)
        except HypothesisError as e:
            self.w[name] = str(e)
            return self.hyp(name, FAIL)
        return self.hyp(name, r.generically_free)

    def has_rank(self, name, M):
        try:
            r = rank_report(M)
        except HypothesisError as e:
            self.w[name] = str(e)
            return self.hyp(name, FAIL)
        self.w[name] = r.to_json()
        return self.hyp(name, r.has_rank)

    def dim_one(self, ring):
        d = ring.dim if ring.dim is not None else ring.hilbert.dimension
        return self.hyp("ring_dimension_one", d == 1)

    def torsionless(self, name, M):
        return self.hyp(name, is_torsionless(M))

    def tor_independent(self, name, M, N):
        """For two-periodic M: Tor_1 = Tor_2 = 0 gives vanishing in all degrees >= 1."""
        t1, t2 = tor(M, N, 1), tor(M, N, 2)
        self.w["tor1_length"] = t1.length
        self.w["tor2_length"] = t2.length
        return self.hyp(name, t1.is_zero and t2.is_zero)

    def torsion(self, M):
        try:
            return torsion_submodule(M)
        except NoNZDFound:
            return None

    # conclusion -------------------------------------------------------------

    def finish(self, conclusion):
        """conclusion: True, False or None (undecided)."""
        r = self.report
        r.conclusion = {True: "true", False: "false", None: "inconclusive"}[conclusion]
        hyps = list(r.hypotheses.values())
        if FAIL in hyps:
            r.status = HYPOTHESIS_NOT_MET
        elif UNKNOWN in hyps:
            r.status = INCONCLUSIVE
        elif conclusion is None:
            r.status = INCONCLUSIVE
        else:
            r.status = VERIFIED if conclusion else REFUTED
        return r


def _series_match(h1, h2):
    """(equal up to a global twist, twist)."""
    d = h1.twist_to(h2)
    return d is not None, d


def _iso_outcome(v: Verdict):
    return {"yes": True, "no": False}.get(v.status)


# -- the checkers ----------------------------------------------------------------

def check_T1(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """M (x) N -> Hom(M*, N) is an isomorphism for Tor-independent pairs."""
    c = _Checker("T1", case, trials, seed)
    c.two_periodic("M_two_periodic", M)
    c.totally_reflexive("M_totally_reflexive", M)
    c.tor_independent("tor_independent", M, N)
    g = fp.natural_map_gamma(M, N)
    ker, cok = fp.kernel(g), fp.cokernel(g)
    c.w["tensor_length"] = fp.tensor(M, N).length
    c.w["hom_dual_length"] = fp.hom(fp.dual(M), N).length
    c.w["kernel_length"] = ker.length
    c.w["cokernel_length"] = cok.length
    return c.finish(ker.is_zero and cok.is_zero)


def check_T2(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """depth M + depth N = depth R + depth(M (x) N)."""
    c = _Checker("T2", case, trials, seed)
    dR = depth(M.ring.R)
    c.hyp("depth_R_positive", dR != INFINITE_DEPTH and dR >= 1)
    c.nonzero("N_nonzero", N)
    c.two_periodic("M_two_periodic", M)
    c.totally_reflexive("M_totally_reflexive", M)
    c.tor_independent("tor_independent", M, N)
    T = fp.tensor(M, N)
    dM, dN, dT = depth(M), depth(N), depth(T)
    c.w.update(depth_M=dM, depth_N=dN, depth_R=dR, depth_tensor=dT)
    if INFINITE_DEPTH in (dM, dN, dT):
        return c.finish(None)
    return c.finish(dM + dN == dR + dT)


def check_T4(M: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """M (x) M* has non-zero torsion for two-periodic M with rank."""
    c = _Checker("T4", case, trials, seed)
    c.dim_one(M.ring)
    c.nonzero("M_nonzero", M)
    c.two_periodic("M_two_periodic", M)
    c.has_rank("M_has_rank", M)
    D = fp.dual(M)
    T = c.torsion(fp.tensor(M, D))
    if T is None:
        return c.finish(None)
    c.w["torsion_length"] = T.length
    t2 = tor(M, D, 2)
    c.w["tor2_M_Mdual_length"] = t2.length
    ok = not T.is_zero
    if c.report.hypotheses.get("M_has_rank") == OK:
        # cross-check: the torsion is Tor_2(M, M*) (M* is torsionless, M generically free)
        ok = ok and T.length == t2.length
    return c.finish(ok)


def check_T5(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """M (x) N torsion-free iff Tor-independent."""
    c = _Checker("T5", case, trials, seed)
    c.dim_one(M.ring)
    c.generically_free("M_generically_free", M)
    c.two_periodic("M_two_periodic", M)
    c.torsionless("N_torsionless", N)
    c.has_rank("N_has_rank", N)
    T = c.torsion(fp.tensor(M, N))
    if T is None:
        return c.finish(None)
    t1, t2 = tor(M, N, 1), tor(M, N, 2)
    torsion_free = T.is_zero
    independent = t1.is_zero and t2.is_zero
    c.w.update(torsion_length=T.length, tor1_length=t1.length, tor2_length=t2.length,
               torsion_free=torsion_free, tor_independent=independent)
    return c.finish(torsion_free == independent)


def check_L21(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """Omega^1 D(M) ~ D(M_1) and Ext^1(D(M), N) = Tor_1(M_1, N)."""
    c = _Checker("L21", case, trials, seed)
    ok_hyp = c.torsionless("M_torsionless", M)
    if ok_hyp != OK:
        return c.finish(None)
    M1 = universal_pushforward(M)
    DM = fp.auslander_dual(M)
    v = fp.projective_equivalence(syzygy(DM, 1), fp.auslander_dual(M1), trials=trials, seed=seed)
    c.w["projective_equivalence"] = v.to_json()
    e1 = ext(DM, N, 1)
    t1 = tor(M1, N, 1)
    same, twist = _series_match(e1.hilbert, t1.hilbert)
    c.w.update(ext1_DM_N_length=e1.length, tor1_M1_N_length=t1.length, series_twist=twist)
    part1 = _iso_outcome(v)
    if part1 is None:
        return c.finish(None)
    return c.finish(part1 and same)


def check_L22(M: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """M* ~ D(M) for projectively two-periodic, totally reflexive M."""
    c = _Checker("L22", case, trials, seed)
    c.hyp("M_projectively_two_periodic",
          c.verdict(is_projectively_two_periodic(M, trials=trials, seed=seed)))
    c.totally_reflexive("M_totally_reflexive", M)
    v = fp.projective_equivalence(fp.dual(M), fp.auslander_dual(M), trials=trials, seed=seed)
    c.w["projective_equivalence"] = v.to_json()
    return c.finish(_iso_outcome(v))


def check_P23(M: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """Omega^1 M ~ M_1 and M* projectively two-periodic."""
    c = _Checker("P23", case, trials, seed)
    c.two_periodic("M_two_periodic", M)
    c.totally_reflexive("M_totally_reflexive", M)
    if not is_torsionless(M):
        c.w["note"] = "M is not torsionless; the universal pushforward is undefined"
        return c.finish(None)
    v1 = fp.projective_equivalence(syzygy(M, 1), universal_pushforward(M), trials=trials, seed=seed)
    v2 = is_projectively_two_periodic(fp.dual(M), trials=trials, seed=seed)
    c.w["syzygy_vs_pushforward"] = v1.to_json()
    c.w["dual_projectively_two_periodic"] = v2.to_json()
    a, b = _iso_outcome(v1), _iso_outcome(v2)
    if a is None or b is None:
        return c.finish(None if (a is not False and b is not False) else False)
    return c.finish(a and b)


def check_L24(M: FPModule, N: FPModule, q: int = 2, *, declared_period=None, case="",
              trials=32, seed=0) -> TheoremReport:
    """T(M (x) N) = Tor_q(M, N) for q-periodic, generically free M and torsionless N."""
    c = _Checker("L24", case, trials, seed)
    if q < 1:
        raise ValueError("q must be >= 1")
    if declared_period is not None and declared_period == q:
        c.hyp("M_q_periodic", OK)
        c.w["period_source"] = "declared"
    elif q % 2 == 0:
        c.two_periodic("M_q_periodic", M)
        c.w["period_source"] = "detected (two-periodic)"
    else:
        c.hyp("M_q_periodic", UNKNOWN)
    c.generically_free("M_generically_free", M)
    c.torsionless("N_torsionless", N)
    T = c.torsion(fp.tensor(M, N))
    if T is None:
        return c.finish(None)
    tq = tor(M, N, q)
    same, twist = _series_match(T.torsion.hilbert, tq.hilbert)
    c.w.update(q=q, torsion_length=T.length, torq_length=tq.length, series_twist=twist)
    return c.finish(same)


def check_L32(M: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """Tor_1(M, M*) != 0 for non-zero two-periodic M."""
    c = _Checker("L32", case, trials, seed)
    c.nonzero("M_nonzero", M)
    c.two_periodic("M_two_periodic", M)
    t1 = tor(M, fp.dual(M), 1)
    c.w["tor1_M_Mdual_length"] = t1.length
    return c.finish(not t1.is_zero)


def check_P33(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """Ext^1(N, M) = 0 => M (x) N* torsion-free; the converse when Ext^1(N, R) = 0."""
    c = _Checker("P33", case, trials, seed)
    c.two_periodic("M_two_periodic", M)
    c.generically_free("M_generically_free", M)
    T = c.torsion(fp.tensor(M, fp.dual(N)))
    if T is None:
        return c.finish(None)
    e1 = ext(N, M, 1)
    e1R = ext(N, M.ring.R, 1)
    torsion_free = T.is_zero
    c.w.update(ext1_N_M_length=e1.length, ext1_N_R_length=e1R.length,
               torsion_length=T.length, torsion_free=torsion_free,
               converse_applies=e1R.is_zero)
    forward = (not e1.is_zero) or torsion_free
    converse = (not e1R.is_zero) or (not torsion_free) or e1.is_zero
    return c.finish(forward and converse)


def check_AB_sequence(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """0 -> Ext^1(D(M), N) -> M (x) N -> Hom(M*, N) -> Ext^2(D(M), N) at the level of series."""
    c = _Checker("AB", case, trials, seed)
    g = fp.natural_map_gamma(M, N)
    ker, cok = fp.kernel(g), fp.cokernel(g)
    DM = fp.auslander_dual(M)
    e1, e2 = ext(DM, N, 1), ext(DM, N, 2)
    same, twist = _series_match(ker.hilbert, e1.hilbert)
    c.w.update(kernel_length=ker.length, ext1_DM_N_length=e1.length,
               cokernel_length=cok.length, ext2_DM_N_length=e2.length, series_twist=twist)
    if not same:
        return c.finish(False)
    bound = 12 + max([abs(d) for d in M.degrees + N.degrees] + [0]) * 2
    dominated = cok.hilbert.shift(twist or 0).leq(e2.hilbert, bound)
    c.w["cokernel_dominated"] = dominated
    return c.finish(dominated)


def check_ARC(M: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """A two-periodic module has Ext^1 or Ext^2 (M, M + R) non-zero (so it is not free)."""
    c = _Checker("ARC", case, trials, seed)
    c.two_periodic("M_two_periodic", M)
    R = M.ring.R
    MR = fp.direct_sum(M, R)
    e1, e2 = ext(M, MR, 1), ext(M, MR, 2)
    free = fp.minimalize(M).relations == () and not M.is_zero
    c.w.update(ext1_length=e1.length, ext2_length=e2.length, free=free)
    return c.finish(free or not (e1.is_zero and e2.is_zero))


def check_THETA(M: FPModule, N: FPModule, *, case="", trials=32, seed=0) -> TheoremReport:
    """Theta is independent of n, and vanishes when N has rank."""
    c = _Checker("THETA", case, trials, seed)
    c.dim_one(M.ring)
    c.two_periodic("M_two_periodic", M)
    c.generically_free("M_generically_free", M)
    if FAIL in c.report.hypotheses.values():
        return c.finish(None)
    try:
        th = theta(M, N, trials=trials, seed=seed)
    except HypothesisError as e:
        c.hyp(e.hypothesis, FAIL)
        return c.finish(None)
    c.w["theta"] = th.to_json()
    ok = th.value == th.value_n2
    try:
        rr = rank_report(N)
        c.w["N_has_rank"] = rr.has_rank
        if rr.has_rank:
            ok = ok and th.value == 0
    except HypothesisError:
        pass
    return c.finish(ok)


CHECKERS = {
    "T1": (check_T1, 2), "T2": (check_T2, 2), "T4": (check_T4, 1), "T5": (check_T5, 2),
    "L21": (check_L21, 2), "L22": (check_L22, 1), "P23": (check_P23, 1), "L24": (check_L24, 2),
    "L32": (check_L32, 1), "P33": (check_P33, 2), "AB": (check_AB_sequence, 2),
    "ARC": (check_ARC, 1), "THETA": (check_THETA, 2),
}
ALIASES = {"AB-sequence": "AB", "AB_sequence": "AB"}


def run_checker(name: str, modules, *, q: int = 2, declared_period=None, case="",
                trials=32, seed=0) -> TheoremReport:
    name = ALIASES.get(name, name)
    if name not in CHECKERS:
        raise KeyError(f"unknown checker {name!r}")
    fn, arity = CHECKERS[name]
    if len(modules) != arity:
        raise ValueError(f"checker {name} takes {arity} module(s)")
    kw = dict(case=case, trials=trials, seed=seed)
    if name == "L24":
        return fn(*modules, q, declared_period=declared_period, **kw)
    return fn(*modules, **kw)
