from hypothesis import given, settings, strategies as st
import pytest

from twoperiodic.casefile import CaseError, parse_case, parse_text

from conftest import CORPUS

NODE = """\
[ring]
p = 32003
vars = x y
ideal = x*y
dim = 1
minimal_primes = x ; y
nzd_candidates = x+y

[module.Mx]
degrees = 0
relations = x

[module.Mxy]
constructor = sum Mx My

[module.My]
degrees = 0
relations = y

[check.t4]
checker = T4
module = Mxy
expect = verified
"""


def test_parse_node_case():
    case = parse_text(NODE, "node")
    assert case.build_ring().dim == 1
    assert case.module("Mxy").rank == 2
    assert case.checks["t4"].get("checker") == "T4"


def test_roundtrip_on_corpus():
    files = sorted(CORPUS.glob("*.case"))
    assert len(files) >= 8
    for f in files:
        case = parse_case(f)
        again = parse_text(case.serialize(), case.name)
        assert again == case
        assert again.serialize() == case.serialize()


def test_wrong_dimension_names_the_invariant():
    with pytest.raises(CaseError) as info:
        parse_text(NODE.replace("dim = 1", "dim = 2"))
    assert info.value.invariant == "hilbert_pole_order"
    assert info.value.line == 5


def test_inhomogeneous_relation_rejected():
    with pytest.raises(CaseError) as info:
        parse_text(NODE.replace("relations = x\n", "relations = x + x*y\n", 1))
    assert info.value.invariant == "homogeneous_presentation"
    assert info.value.line == 11


@pytest.mark.parametrize("text, line, column", [
    (NODE.replace("relations = y", "relations = y + w"), 18, 17),
    (NODE.replace("ideal = x*y", "ideal = x*y +"), 4, 14),
    (NODE.replace("minimal_primes = x ; y", "minimal_primes = x ; y, q"), 6, 25),
    (NODE.replace("[module.Mx]", "[module.Mx"), 9, 10),
    (NODE.replace("degrees = 0\nrelations = x", "degrees = 0\nrelatons = x"), 11, 1),
    (NODE.replace("expect = verified", "expect = maybe"), 23, 10),
    (NODE.replace("module = Mxy\n", "module = Mz\n"), 22, 10),
])
def test_errors_carry_line_and_column(text, line, column):
    with pytest.raises(CaseError) as info:
        parse_text(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_constructor_cycles_are_rejected():
    text = NODE + "\n[module.A]\nconstructor = dual B\n\n[module.B]\nconstructor = dual A\n"
    with pytest.raises(CaseError, match="in terms of itself"):
        parse_text(text)


def test_unknown_module_in_constructor():
    with pytest.raises(CaseError):
        parse_text(NODE.replace("sum Mx My", "sum Mx Mq"))


names = st.from_regex(r"[a-z][a-z0-9_]{0,6}", fullmatch=True)
polys = st.sampled_from(["x", "y", "x+y", "x^2", "2*x*y", "y^3 - x^3", "0"])


@given(st.dictionaries(names, st.lists(polys, min_size=1, max_size=3), min_size=1, max_size=4))
@settings(max_examples=30, deadline=None)
def test_roundtrip_generated(modules):
    text = "[ring]\nvars = x y\n"
    for name, rels in modules.items():
        text += f"\n[module.{name}]\ndegrees = 0\nrelations = {', '.join(rels)}\n"
    case = parse_text(text)
    again = parse_text(case.serialize())
    assert again == case
    for name in modules:
        assert again.module(name).hilbert == case.module(name).hilbert
