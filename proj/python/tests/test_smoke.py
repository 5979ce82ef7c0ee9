from fractions import Fraction

import pytest

import cantor_density as cd


def test_dualistic_measure():
    a = cd.DensitySet({"kind": "dualistic", "measure": "5/8"})
    assert a.kind == "dualistic"
    assert a.bounds() == (Fraction(5, 8), Fraction(5, 8))


def test_clopen_localization():
    a = cd.DensitySet({"kind": "clopen", "words": ["0", "11"]})
    assert a.bounds("1") == (Fraction(1, 2), Fraction(1, 2))
    assert a.bounds("0") == (1, 1)


def test_trace_and_classify():
    a = cd.DensitySet({"kind": "reduction", "which": "second", "tree": "zeros"})
    zeros = {"kind": "periodic", "head": "", "period": "0"}
    branch = {"kind": "stretch", "of": zeros}
    pts = a.trace(branch, 4)
    assert [p.n for p in pts] == [0, 1, 2, 3]
    assert all(p.lo <= p.hi for p in pts)
    verdict = a.classify(branch, eps=Fraction(1, 64))
    assert verdict["verdict"] == "converges"
    assert Fraction(verdict["value"]["hi"]) == 1


def test_codecs():
    assert cd.encode_check([2, 0, 1]) == "001101"
    assert cd.decode_hat("0011010") == [2, 0, 1]
    assert cd.head_tail("01100") == ("011", 2)
    assert cd.stretch("101") == "100111"
    assert cd.interleave("10", "01") == "1001"
    assert cd.ltimes("0100", [3]) == "01000100"


def test_numbers():
    assert cd.four_ary_digits(Fraction(3, 16), 4) == [0, 3, 0, 0]
    assert cd.least_dyadic_in(Fraction(3, 5), Fraction(7, 10)) == Fraction(5, 8)
    assert cd.canonical_of_measure("3/4") == ["0", "10"]


def test_errors():
    with pytest.raises(cd.SpecError):
        cd.DensitySet({"kind": "bogus"})
    with pytest.raises(ValueError):
        cd.DensitySet("{not json")
    with pytest.raises(cd.DomainError):
        cd.DensitySet({"kind": "dualistic", "measure": "3/2"})
    with pytest.raises(cd.DomainError):
        cd.run_suite("nosuch")


def test_suite_runs():
    names = [name for name, _, _ in cd.suites()]
    assert "codec" in names
    r = cd.run_suite("codec", seed=3, cases=20)
    assert r["failed"] == 0
    assert r["passed"] > 0
