import pytest

import arboreal

ADDING = """alphabet 2
a = (e, a) [1 0]
s = (e, e) [1 0]
b = (s, b)
c = (c, s)
"""


@pytest.fixture
def sys():
    return arboreal.System.parse(ADDING)


def test_element_algebra(sys):
    a = sys["a"]
    assert a.perm() == [1, 0]
    assert a.act([1, 1, 0]) == [0, 0, 1]
    assert a * a.inverse() == sys.word("e")
    assert a.section(1) == a


def test_order_and_class(sys):
    assert arboreal.order(sys["a"]) == ("infinite", 0)
    assert arboreal.order(sys["c"]) == ("finite", 2)
    assert arboreal.classify(sys["s"]) == "finitary(1)"
    assert len(arboreal.orbit_signalizer(sys["b"])) == 3


def test_conjugacy(sys):
    a, b, c = sys["a"], sys["b"], sys["c"]
    h = arboreal.conjugate_in_aut(a, a.inverse())
    assert h is not None and arboreal.verify_conjugator(h, a, a.inverse())
    verdict, h = arboreal.conjugate_in_pol0(b, c)
    assert verdict == "conjugate" and h == a
    assert arboreal.conjugate_in_pol0(a, a.inverse())[0] == "not conjugate"


def test_errors_and_cli(sys):
    with pytest.raises(arboreal.ParseError):
        arboreal.System.parse("alphabet 2\nb = (q, b)\n")
    code, out, _ = arboreal.run(["--version"])
    assert code == 0 and out.strip()


def test_random_bounded_is_deterministic():
    assert str(arboreal.random_bounded(7)) == str(arboreal.random_bounded(7))
