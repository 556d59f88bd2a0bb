import json

import pytest

from twoperiodic import run_checker
from twoperiodic.verifier import CHECKERS, HYPOTHESIS_NOT_MET, REFUTED, VERIFIED

from test_resolution import cusp_module

NODE = ["R", "Mx", "My", "Mxy", "Mxy_dual", "k", "N"]


def run(name, mods, *names, **kw):
    return run_checker(name, [mods[n] for n in names], **kw)


@pytest.mark.parametrize("checker, names, status", [
    ("T1", ("Mx", "N"), VERIFIED),
    ("T1", ("Mx", "R"), VERIFIED),
    ("T1", ("Mx", "Mx"), HYPOTHESIS_NOT_MET),
    ("T2", ("Mx", "N"), VERIFIED),
    ("T2", ("Mx", "R"), VERIFIED),
    ("T4", ("Mxy",), VERIFIED),
    ("T4", ("Mx",), HYPOTHESIS_NOT_MET),
    ("T5", ("Mx", "Mxy"), VERIFIED),
    ("T5", ("Mx", "R"), VERIFIED),
    ("L21", ("Mx", "k"), VERIFIED),
    ("L21", ("R", "N"), VERIFIED),
    ("L21", ("Mxy", "Mx"), VERIFIED),
    ("L22", ("Mx",), VERIFIED),
    ("L22", ("R",), VERIFIED),
    ("L22", ("Mxy",), VERIFIED),
    ("P23", ("Mx",), VERIFIED),
    ("P23", ("Mxy",), VERIFIED),
    ("L32", ("Mx",), VERIFIED),
    ("L32", ("Mxy",), VERIFIED),
    ("P33", ("Mx", "Mx"), VERIFIED),
    ("P33", ("Mx", "R"), VERIFIED),
    ("P33", ("Mx", "Mxy"), VERIFIED),
    ("AB", ("Mx", "Mx"), VERIFIED),
    ("AB", ("R", "N"), VERIFIED),
    ("AB", ("k", "R"), VERIFIED),
    ("ARC", ("Mx",), VERIFIED),
    ("ARC", ("Mxy",), VERIFIED),
    ("THETA", ("Mx", "My"), VERIFIED),
])
def test_checker_examples(mods, checker, names, status):
    assert run(checker, mods, *names).status == status


def test_witnesses(mods):
    rep = run("T4", mods, "Mxy")
    assert rep.witnesses["torsion_length"] == 2
    assert rep.witnesses["tor2_M_Mdual_length"] == 2
    rep = run("T1", mods, "Mx", "N")
    assert rep.witnesses["tensor_length"] == 1
    rep = run("L32", mods, "Mxy")
    assert rep.witnesses["tor1_M_Mdual_length"] == 2
    rep = run("T2", mods, "Mx", "N")
    w = rep.witnesses
    assert (w["depth_M"], w["depth_N"], w["depth_R"], w["depth_tensor"]) == (1, 0, 1, 0)


def test_l24_values(mods):
    rep = run("L24", mods, "Mx", "Mxy", q=2)
    assert rep.status == VERIFIED
    assert rep.witnesses["torsion_length"] == rep.witnesses["torq_length"] == 1
    rep = run("L24", mods, "Mxy", "Mxy_dual", q=2)
    assert rep.witnesses["torsion_length"] == 2


def test_sharpness_conclusions_fail(mods):
    """Where the hypothesis fails, the conclusion is also seen to fail."""
    rep = run("T4", mods, "Mx")
    assert rep.status == HYPOTHESIS_NOT_MET and rep.conclusion == "false"
    rep = run("T1", mods, "Mx", "Mx")
    assert rep.status == HYPOTHESIS_NOT_MET
    assert rep.hypotheses["tor_independent"] == "failed"
    rep = run("T5", mods, "Mx", "Mx")
    assert rep.status == HYPOTHESIS_NOT_MET and rep.conclusion == "false"
    rep = run("P33", mods, "k", "R")
    assert rep.status == HYPOTHESIS_NOT_MET and rep.conclusion == "false"


def test_cusp_checks(cusp):
    Mc = cusp_module(cusp)
    assert run_checker("T4", [Mc]).status == VERIFIED
    assert run_checker("T4", [Mc]).witnesses["torsion_length"] > 0
    assert run_checker("L32", [Mc]).status == VERIFIED
    assert run_checker("P23", [Mc]).status == VERIFIED


def test_no_checker_refutes_on_node_modules(mods):
    for name, (_, arity) in CHECKERS.items():
        pairs = [(a,) for a in NODE] if arity == 1 else [(a, b) for a in NODE for b in NODE]
        for names in pairs:
            rep = run(name, mods, *names)
            assert rep.status != REFUTED, (name, names, rep.witnesses)


def test_report_is_deterministic_json(mods):
    a = json.dumps(run("T5", mods, "Mxy", "Mxy_dual", seed=3).to_json(), sort_keys=True)
    b = json.dumps(run("T5", mods, "Mxy", "Mxy_dual", seed=3).to_json(), sort_keys=True)
    assert a == b


def test_unknown_checker_and_arity(mods):
    with pytest.raises(KeyError):
        run("T9", mods, "Mx")
    with pytest.raises(ValueError):
        run("T4", mods, "Mx", "My")
    assert run("AB-sequence", mods, "Mx", "Mx").checker == "AB"
