from fractions import Fraction
from math import factorial

import pytest

from weaksperner.coxeter import (
    BudgetExceeded,
    CoxeterSpec,
    QSqrt5,
    UnsupportedCoxeterType,
    _identity,
    _matmul,
    a_type_isomorphism,
    build_weak_order_coxeter,
    conjecture_check,
    coxeter_type,
    element_order,
    enumerate_group,
    known_order,
    parse_coxeter,
    parse_coxeter_matrix,
    reflection_representation,
)
from weaksperner.poset import build_weak_order, rank_profile

SUPPORTED = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D3", "D4", "F4", "H3",
             *[f"I2:{m}" for m in range(2, 13)]]


def test_qsqrt5_arithmetic():
    tau = QSqrt5(Fraction(1, 2), Fraction(1, 2))
    assert tau * tau == tau + 1
    assert tau * (tau - 1) == 1
    assert QSqrt5(0, 1) * QSqrt5(0, 1) == 5
    assert QSqrt5(2) == 2 and hash(QSqrt5(2)) == hash(2)
    assert not QSqrt5(0) and QSqrt5(0, Fraction(1, 3))
    assert QSqrt5(Fraction(1, 2), 0) + QSqrt5(Fraction(1, 2), 0) == QSqrt5(1)
    assert (tau - tau) == 0 and -tau == QSqrt5(Fraction(-1, 2), Fraction(-1, 2))


def test_spec_validation():
    with pytest.raises(ValueError):
        CoxeterSpec("bad", ((1, 3), (2, 1)))
    with pytest.raises(ValueError):
        CoxeterSpec("bad", ((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        CoxeterSpec("bad", ((2,),))


def test_parsing():
    assert parse_coxeter("I2:7") == parse_coxeter("I2(7)") == coxeter_type("I", 7)
    assert parse_coxeter("b3").label == "B3"
    assert coxeter_type("D", 3).matrix == ((1, 3, 3), (3, 1, 2), (3, 2, 1))
    with pytest.raises(ValueError):
        parse_coxeter("Q3")
    with pytest.raises(UnsupportedCoxeterType):
        coxeter_type("F", 5)
    spec = parse_coxeter_matrix("3\n3 2\n4\n", label="B3x")
    assert spec.matrix == coxeter_type("B", 3).matrix
    with pytest.raises(ValueError):
        parse_coxeter_matrix("3\n3 2\n")


@pytest.mark.parametrize("label", SUPPORTED + ["H4"])
def test_coxeter_relations_exact(label):
    spec = parse_coxeter(label)
    gens = reflection_representation(spec)
    dim = len(gens[0])
    one = gens[0][0][0] * 0 + 1
    identity = _identity(dim, one, one * 0)
    for i, s in enumerate(gens):
        assert _matmul(s, s) == identity
        for j, t in enumerate(gens):
            if i < j:
                assert element_order(_matmul(s, t)) == spec.m(i, j)


def test_h3_generators_over_sqrt5():
    gens = reflection_representation(parse_coxeter("H3"))
    assert any(isinstance(x, QSqrt5) and x.b for row in gens[1] for x in row)


def test_unsupported_field():
    spec = parse_coxeter_matrix("3\n7 2 3\n")
    with pytest.raises(UnsupportedCoxeterType):
        reflection_representation(spec)


@pytest.mark.parametrize("label", SUPPORTED)
def test_group_orders(label):
    spec = parse_coxeter(label)
    els = enumerate_group(spec)
    assert len(els) == known_order(spec)
    assert els[0].length == 0 and str(els[0].word) == "e"
    assert len({e.matrix for e in els}) == len(els)


def test_known_order_formulas():
    assert known_order(coxeter_type("A", 5)) == factorial(6)
    assert known_order(coxeter_type("B", 4)) == 2 ** 4 * factorial(4)
    assert known_order(coxeter_type("D", 4)) == 2 ** 3 * factorial(4)
    assert known_order(parse_coxeter("I2:9")) == 18
    assert known_order(parse_coxeter("H3")) == 120
    assert known_order(parse_coxeter("F4")) == 1152


@pytest.mark.parametrize("label, size, top", [("A3", 24, 6), ("B3", 48, 9), ("H3", 120, 15),
                                              ("F4", 1152, 24), ("D4", 192, 12)])
def test_longest_length_is_number_of_positive_roots(label, size, top):
    els = enumerate_group(parse_coxeter(label))
    assert len(els) == size and max(e.length for e in els) == top


@pytest.mark.parametrize("m", range(2, 13))
def test_dihedral_weak_order(m):
    P = build_weak_order_coxeter(coxeter_type("I", m))
    assert len(P) == 2 * m and P.r == m
    assert rank_profile(P).sizes == (1,) + (2,) * (m - 1) + (1,)


def test_enumeration_cap():
    with pytest.raises(BudgetExceeded, match="20"):
        enumerate_group(parse_coxeter("A4"), cap=20)


def test_lengths_are_bfs_depths_and_words_are_reduced():
    spec = parse_coxeter("B3")
    gens = reflection_representation(spec)
    els = enumerate_group(spec)
    for g in els:
        assert len(g.word.word) == g.length
        M = _identity(3)
        for s in g.word.word:
            M = _matmul(M, gens[s - 1])
        assert M == g.matrix
    words = [g.word.word for g in els]
    for k in range(10):
        level = [w for w in words if len(w) == k]
        assert level == sorted(level)


def test_a2_matches_w3_and_i2_3():
    A2 = build_weak_order_coxeter(parse_coxeter("A2"))
    I23 = build_weak_order_coxeter(parse_coxeter("I2:3"))
    assert A2.elements == I23.elements and A2.up_covers == I23.up_covers
    mapping = a_type_isomorphism(A2, 3)
    assert {str(w): str(p) for w, p in mapping.items()} == {
        "e": "123", "1": "213", "2": "132", "12": "231", "21": "312", "121": "321"}


@pytest.mark.parametrize("n", range(2, 6))
def test_a_type_isomorphic_to_weak_order(n):
    P = build_weak_order_coxeter(coxeter_type("A", n - 1))
    mapping = a_type_isomorphism(P, n)
    W = build_weak_order(n)
    assert rank_profile(P) == rank_profile(W)
    assert len(mapping) == len(W)


@pytest.mark.parametrize("label", ["A3", "B3", "H3", "D4", "B4", "I2:7"])
def test_weak_order_profiles_symmetric_unimodal(label):
    prof = rank_profile(build_weak_order_coxeter(parse_coxeter(label)))
    assert prof.symmetric and prof.unimodal


def test_h3_weak_order():
    P = build_weak_order_coxeter(parse_coxeter("H3"))
    assert len(P) == 120 and P.r == 15
    assert rank_profile(P).symmetric


@pytest.mark.parametrize("label", ["I2:5", "I2:9", "A3", "B3", "D3"])
def test_conjecture_check_small(label):
    cert = conjecture_check(parse_coxeter(label))
    assert cert.strongly_sperner and cert.peck and cert.concave()
    assert cert.metadata["group_order"] == known_order(parse_coxeter(label))


def test_conjecture_check_with_oracle():
    cert = conjecture_check(parse_coxeter("I2:6"), with_oracle=True)
    assert all(r.oracle_value == r.max_k_antichain for r in cert.per_k)


def test_h4_needs_opt_in():
    with pytest.raises(BudgetExceeded, match="opt-in"):
        conjecture_check(parse_coxeter("H4"))
