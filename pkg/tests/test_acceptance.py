"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import json
import subprocess
import sys
import time
from itertools import product

import pytest

from twoperiodic import (
    FPModule, RingSpec, depth, dual, ext, hom, is_isomorphic, resolve, syzygy, tensor, theta, tor,
    torsion_submodule,
)
from twoperiodic.casefile import parse_case
from twoperiodic.cli import run_case_checks
from twoperiodic.degreewise import Oracle
from twoperiodic.fpmodule import StructuralError, is_isomorphism
from twoperiodic.invariants import HypothesisError, NoNZDFound

from conftest import CORPUS

ALL_CHECKERS = ["T1", "T2", "T4", "T5", "L21", "L22", "P23", "L24", "L32", "P33", "AB", "ARC"]
MAX_DEGREE = 12


@pytest.fixture
def announce(capsys):
    def out(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return out


@pytest.fixture(scope="module")
def corpus_run():
    start = time.perf_counter()
    cases = [run_case_checks(str(f), 0, 32) for f in sorted(CORPUS.glob("*.case"))]
    return cases, time.perf_counter() - start


def corpus_cases():
    return [parse_case(f) for f in sorted(CORPUS.glob("*.case"))]


# -- 1 ---------------------------------------------------------------------------------------

def test_criterion_1_worked_example(announce):
    start = time.perf_counter()
    ring = RingSpec(["x", "y"], ["x*y"], dim=1, minimal_primes=[["x"], ["y"]],
                    nzd_candidates=["x+y"])
    x, y = ring.parse("x"), ring.parse("y")
    M = FPModule(ring, [0], [{(m, 0): c for m, c in x.items()}])
    res = resolve(M, 4)
    entries = [res.matrix(i) for i in range(1, 5)]
    signs = {ring.S.p - 1, 1}
    alternating = all(
        len(E) == 1 and len(E[0]) == 1 and set(E[0][0]) == set(want) and set(E[0][0].values()) <= signs
        for E, want in zip(entries, [x, y, x, y]))
    betti = res.betti_numbers(4) == [1] * 5
    iso = is_isomorphic(hom(M, ring.R), M, allow_twist=True)
    witness_ok = iso.status == "yes" and is_isomorphism(iso.witness)
    hom_zero = hom(M, syzygy(M, 1)).is_zero
    ext1_zero = ext(M, M, 1).is_zero
    torsion_free = torsion_submodule(tensor(M, dual(M))).is_zero
    elapsed = time.perf_counter() - start
    ok = all([alternating, betti, witness_ok, hom_zero, ext1_zero, torsion_free, elapsed < 1.0])
    announce(1, ok, f"differentials [x],[y],[x],[y]={alternating}, betti 1s={betti}, "
                    f"Hom(M,R)~M={witness_ok} (twist {iso.twist}), Hom(M,Omega1 M)=0={hom_zero}, "
                    f"Ext1(M,M)=0={ext1_zero}, M(x)M* torsion-free={torsion_free}, "
                    f"{elapsed:.3f}s")


# -- 2 ---------------------------------------------------------------------------------------

def test_criterion_2_theorem_suite(announce, corpus_run):
    cases, elapsed = corpus_run
    reports = [r for c in cases for r in c["reports"]]
    statuses = [r["status"] for r in reports]
    distinct_rings = {(parse_case(CORPUS / c["file"]).ring.get("vars"),
                       parse_case(CORPUS / c["file"]).ring.get("ideal")) for c in cases}
    verified_by = {r["checker"] for r in reports if r["status"] == "verified"}
    missing = [c for c in ALL_CHECKERS if c not in verified_by]
    # every report whose hypotheses all hold must be verified
    all_hyp_ok = [r for r in reports if all(v == "verified" for v in r["hypotheses"].values())]
    bad = [r["case"] for r in all_hyp_ok if r["status"] != "verified"]
    ok = (len(cases) >= 8 and len(distinct_rings) >= 3 and statuses.count("refuted") == 0
          and statuses.count("inconclusive") == 0 and not missing and not bad and elapsed < 60)
    announce(2, ok, f"{len(cases)} cases, {len(distinct_rings)} rings, {len(reports)} reports, "
                    f"verified={statuses.count('verified')}, "
                    f"hypothesis_not_met={statuses.count('hypothesis_not_met')}, "
                    f"refuted={statuses.count('refuted')}, "
                    f"inconclusive={statuses.count('inconclusive')}, "
                    f"checkers never verified={missing}, {elapsed:.1f}s")


# -- 3 ---------------------------------------------------------------------------------------

def test_criterion_3_sharpness(announce, corpus_run):
    cases, _ = corpus_run
    reports = [r for c in cases for r in c["reports"]]

    def sharp(checker):
        return [r["case"] for r in reports if r["checker"] == checker
                and r["status"] == "hypothesis_not_met" and r["conclusion"] == "false"]

    t4 = [r for r in reports if r["checker"] == "T4" and r["status"] == "hypothesis_not_met"
          and r["hypotheses"].get("M_has_rank") == "failed"
          and r["witnesses"].get("torsion_length") == 0]
    t1 = [r for r in reports if r["checker"] == "T1" and r["status"] == "hypothesis_not_met"
          and r["hypotheses"].get("tor_independent") == "failed"]
    never_verified = all(r["status"] != "verified" for r in t4 + t1)
    per_checker = {c: sharp(c) for c in ("T1", "T4", "T5", "P33")}
    ok = bool(t4) and bool(t1) and never_verified and all(per_checker.values())
    announce(3, ok, f"T4 without rank, torsion-free M(x)M*: {[r['case'] for r in t4]}; "
                    f"T1 with Tor1 != 0: {[r['case'] for r in t1]}; "
                    f"failing conclusions behind unmet hypotheses: "
                    f"{ {c: len(v) for c, v in per_checker.items()} }")


# -- 4 ---------------------------------------------------------------------------------------

def _pairs(case):
    pairs = set()
    for sec in case.checks.values():
        if sec.get("left"):
            pairs.add((sec.get("left"), sec.get("right")))
        else:
            pairs.add((sec.get("module"), sec.get("module")))
    return sorted(pairs)


def _agree(oracle_dims, H, lo):
    """Exact match in degrees lo..12, and of the length when the support lies inside."""
    if oracle_dims != H.hilbert.coefficients(lo, MAX_DEGREE):
        return False
    if H.length is not None and not any(H.hilbert.coefficients(MAX_DEGREE + 1, 3 * MAX_DEGREE)):
        return sum(oracle_dims) == H.length
    return True


def test_criterion_4_oracle_equivalence(announce):
    lo = -2 * MAX_DEGREE
    count, mismatches = 0, []
    for case in corpus_cases():
        ring = case.build_ring()
        oracle = Oracle(ring, MAX_DEGREE)
        for a, b in _pairs(case):
            M, N = case.module(a), case.module(b)
            for i in range(4):
                for kind, fn, ofn in (("Tor", tor, oracle.tor_dims), ("Ext", ext, oracle.ext_dims)):
                    count += 1
                    if not _agree(ofn(M, N, i, lo, MAX_DEGREE), fn(M, N, i), lo):
                        mismatches.append(f"{case.name}:{kind}_{i}({a},{b})")
            X = tensor(M, dual(N))
            try:
                T = torsion_submodule(X)
            except NoNZDFound:
                continue
            count += 1
            dims = oracle.torsion_dims(X, T.u, lo, MAX_DEGREE)
            if dims != T.torsion.hilbert.coefficients(lo, MAX_DEGREE):
                mismatches.append(f"{case.name}:T({a} (x) {b}*)")
    ok = count >= 40 and not mismatches
    announce(4, ok, f"{count} Tor/Ext/torsion comparisons up to degree {MAX_DEGREE}, "
                    f"mismatches={mismatches}")


# -- 5 ---------------------------------------------------------------------------------------

def test_criterion_5_spot_values(announce):
    case = parse_case(CORPUS / "node.case")
    ring = case.build_ring()
    Mx, My, Mxy, N = (case.module(n) for n in ("Mx", "My", "Mxy", "N"))
    oracle = Oracle(ring, MAX_DEGREE)

    def oracle_len(M, N, i):
        return sum(oracle.tor_dims(M, N, i, -2 * MAX_DEGREE, MAX_DEGREE))

    def oracle_theta(M, N):
        return oracle_len(M, N, 2) - oracle_len(M, N, 1)

    values = {
        "theta(Mx,My)": (theta(Mx, My).value, oracle_theta(Mx, My), 1),
        "theta(Mx,Mx)": (theta(Mx, Mx).value, oracle_theta(Mx, Mx), -1),
        "theta(Mxy,Mxy*)": (theta(Mxy, dual(Mxy)).value, oracle_theta(Mxy, dual(Mxy)), 0),
        "Tor1(Mx,Mx*)": (tor(Mx, dual(Mx), 1).length, oracle_len(Mx, dual(Mx), 1), 1),
    }
    X = tensor(Mxy, dual(Mxy))
    T = torsion_submodule(X)
    values["torsion(Mxy(x)Mxy*)"] = (T.length, sum(oracle.torsion_dims(X, T.u, -24, 12)), 2)
    d = (depth(Mx), depth(N), depth(ring.R), depth(tensor(Mx, N)))
    depth_ok = d == (1, 0, 1, 0) and d[0] + d[1] == d[2] + d[3]
    ok = depth_ok and all(a == b == want for a, b, want in values.values())
    announce(5, ok, ", ".join(f"{k}={v[0]} (oracle {v[1]})" for k, v in values.items())
             + f", depth identity {d[0]} + {d[1]} = {d[2]} + {d[3]}")


# -- 6 ---------------------------------------------------------------------------------------

def _corpus_json(tmp_path, name):
    out = tmp_path / name
    subprocess.run([sys.executable, "-m", "twoperiodic.cli", "corpus", "--dir", str(CORPUS),
                    "--seed", "7", "--jobs", "4", "--report", str(out)],
                   check=True, capture_output=True)
    data = json.loads(out.read_text())
    data.pop("timing")
    return json.dumps(data, indent=2, sort_keys=True).encode()


def test_criterion_6_determinism(announce, tmp_path):
    a = _corpus_json(tmp_path, "a.json")
    b = _corpus_json(tmp_path, "b.json")
    announce(6, a == b, f"two corpus runs with seed 7: {len(a)} bytes each, identical={a == b}")


# -- 7 ---------------------------------------------------------------------------------------

def _theta_or_none(M, N):
    try:
        return theta(M, N)
    except HypothesisError:
        return None


def test_criterion_7_theta(announce):
    evaluated, n_mismatch, sequences, additive_fail = 0, [], 0, []
    for case in corpus_cases():
        ring = case.build_ring()
        if ring.dim != 1:
            continue
        names = list(case.modules)
        mods = {n: case.module(n) for n in names}
        for a, b in product(names, names):
            try:
                th = _theta_or_none(mods[a], mods[b])
            except StructuralError as e:
                n_mismatch.append(f"{case.name}:({a},{b}) {e}")
                continue
            if th is None:
                continue
            evaluated += 1
            if th.value != th.value_n2:
                n_mismatch.append(f"{case.name}:({a},{b})")
        # 0 -> Omega^1 N' -> F -> N' -> 0 in the second argument
        for a, b in product(names, names):
            M, Np = mods[a], mods[b]
            if _theta_or_none(M, Np) is None:
                continue
            res = resolve(Np, 1)
            F = ring.free(res.degrees(0))
            th_syz = _theta_or_none(M, syzygy(Np, 1))
            th_F = _theta_or_none(M, F)
            if th_syz is None or th_F is None:
                continue
            sequences += 1
            if th_syz.value + theta(M, Np).value != th_F.value:
                additive_fail.append(f"{case.name}:({a},{b})")
    ok = evaluated > 0 and not n_mismatch and sequences >= 10 and not additive_fail
    announce(7, ok, f"theta at n=1 equals n=2 on {evaluated} pairs (mismatches {n_mismatch}); "
                    f"additivity on {sequences} sequences 0 -> Omega1 N' -> F -> N' -> 0 "
                    f"(failures {additive_fail})")
