"""Algebra core: catalog products, identity checks, star product, morphisms."""

from __future__ import annotations

from fractions import Fraction

import pytest

from rnalg.algebra import (KIND_NIJENHUIS, KIND_REYNOLDS, KIND_RN,
                           check_associative, check_morphism, check_operator,
                           classify_square, modified_rota_baxter, parse_kind,
                           rota_baxter, star_product)
from rnalg.catalog import catalog, get_algebra, operator
from rnalg.errors import InputError

CAT = catalog()


def _e(a, i):
    return a.basis_vector(i)


def test_catalog_names_and_dimensions():
    assert sorted(CAT) == ["leftunit2", "mat2", "pair3", "trunc3", "zero1"]
    assert [CAT[n].dim for n in ("zero1", "leftunit2", "pair3", "mat2", "trunc3")] == [1, 2, 3, 4, 3]


def test_all_catalog_algebras_are_associative():
    for name, a in CAT.items():
        assert check_associative(a).passed, name


def test_leftunit2_product_table():
    a = CAT["leftunit2"]
    assert a.multiply(_e(a, 0), _e(a, 0)) == _e(a, 0)
    assert a.multiply(_e(a, 0), _e(a, 1)) == _e(a, 1)
    assert a.multiply(_e(a, 1), _e(a, 0)) == [Fraction(0), Fraction(0)]
    assert a.multiply(_e(a, 1), _e(a, 1)) == [Fraction(0), Fraction(0)]


def test_pair3_product_table():
    a = CAT["pair3"]
    assert a.multiply(_e(a, 0), _e(a, 2)) == _e(a, 1)
    assert a.multiply(_e(a, 2), _e(a, 0)) == _e(a, 1)
    for i in range(3):
        for j in range(3):
            if (i, j) not in ((0, 2), (2, 0)):
                assert a.multiply(_e(a, i), _e(a, j)) == [Fraction(0)] * 3


def test_mat2_matrix_unit_products():
    # basis order E00, E01, E10, E11; EabEcd = delta(b,c) Ead
    a = CAT["mat2"]
    assert a.multiply(_e(a, 0), _e(a, 1)) == _e(a, 1)
    assert a.multiply(_e(a, 1), _e(a, 2)) == _e(a, 0)
    assert a.multiply(_e(a, 1), _e(a, 1)) == [Fraction(0)] * 4
    assert a.multiply(_e(a, 2), _e(a, 1)) == _e(a, 3)


def test_trunc3_truncation():
    a = CAT["trunc3"]
    assert a.multiply(_e(a, 1), _e(a, 1)) == _e(a, 2)
    assert a.multiply(_e(a, 1), _e(a, 2)) == [Fraction(0)] * 3
    assert a.multiply(_e(a, 0), _e(a, 2)) == _e(a, 2)


def test_single_constant_mutations_break_associativity():
    bad = get_algebra("leftunit2")
    c = [[[x for x in col] for col in row] for row in bad.c]
    c[0][0][1] = Fraction(1)
    mutated = type(bad)(bad.dim, c)
    report = check_associative(mutated)
    assert not report.passed
    assert report.violations[0].residual != ()


def test_parse_kind_accepts_all_forms():
    assert parse_kind("rn") is KIND_RN
    assert parse_kind("reynolds") is KIND_REYNOLDS
    assert parse_kind("nijenhuis") is KIND_NIJENHUIS
    assert parse_kind("rb:-1").label() == "rota_baxter(-1)"
    assert parse_kind("mrb:1/2").label() == "modified_rota_baxter(1/2)"
    assert parse_kind("rb:0") == rota_baxter(0)
    assert parse_kind("mrb:-1") == modified_rota_baxter(-1)


def test_parse_kind_rejects_unknown_strings():
    for bad in ("", "rb", "rb:", "rb:x", "reynolds-nijenhuis?", "mrb"):
        with pytest.raises(InputError):
            parse_kind(bad)


def test_zero_and_identity_operators_pass_rn_everywhere():
    for name, a in CAT.items():
        zero = operator([[0] * a.dim for _ in range(a.dim)])
        ident = operator([[1 if i == j else 0 for j in range(a.dim)] for i in range(a.dim)])
        assert check_operator(a, zero, KIND_RN).passed, name
        assert check_operator(a, ident, KIND_RN).passed, name


def test_projection_onto_second_basis_vector_splits_the_identities():
    a = CAT["leftunit2"]
    p = operator([[0, 0], [0, 1]])
    assert check_operator(a, p, KIND_NIJENHUIS).passed
    rep = check_operator(a, p, KIND_REYNOLDS)
    assert not rep.passed
    v = rep.violations[0]
    assert (v.i, v.j, v.identity) == (0, 1, "reynolds")
    assert v.residual == (Fraction(0), Fraction(-1))
    assert check_operator(a, p, rota_baxter(-1)).passed


def test_combined_check_reports_the_failing_component():
    a = CAT["leftunit2"]
    rep = check_operator(a, operator([[0, 0], [0, 1]]), KIND_RN)
    assert [v.identity for v in rep.violations] == ["reynolds"]


def test_solution_set_is_not_closed_under_addition():
    a = CAT["pair3"]
    first = operator([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    last = operator([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
    both = operator([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    assert check_operator(a, first, KIND_RN).passed
    assert check_operator(a, last, KIND_RN).passed
    assert not check_operator(a, both, KIND_RN).passed


def test_star_product_zero_operator_kills_everything():
    a = CAT["leftunit2"]
    st = star_product(a, operator([[0, 0], [0, 0]]))
    for i in range(2):
        for j in range(2):
            assert st.multiply(_e(st, i), _e(st, j)) == [Fraction(0)] * 2


def test_star_product_identity_operator_preserves_product():
    for name, a in CAT.items():
        ident = operator([[1 if i == j else 0 for j in range(a.dim)] for i in range(a.dim)])
        st = star_product(a, ident)
        assert st.c == a.c, name


def test_star_product_worked_example_on_pair3():
    a = CAT["pair3"]
    p = operator([[0, 2, 0], [0, 0, 0], [0, 3, 0]])
    st = star_product(a, p)
    assert st.multiply(_e(st, 0), _e(st, 1)) == [Fraction(0), Fraction(3), Fraction(0)]
    assert st.multiply(_e(st, 1), _e(st, 2)) == [Fraction(0), Fraction(2), Fraction(0)]
    assert st.multiply(_e(st, 0), _e(st, 2)) == [Fraction(-2), Fraction(0), Fraction(-3)]


def test_star_of_nilpotent_shift_is_zero_but_operator_is_not_multiplicative():
    # P e0 = e1 is RN; the star table degenerates to zero while
    # P(e0.e0) = e1 is nonzero, so P does not carry . to * .
    a = CAT["leftunit2"]
    p = operator([[0, 0], [1, 0]])
    assert check_operator(a, p, KIND_RN).passed
    st = star_product(a, p)
    assert all(st.multiply(_e(st, i), _e(st, j)) == [Fraction(0)] * 2
               for i in range(2) for j in range(2))
    into = check_morphism(a, st, p, p, p)
    assert not into.product_ok
    assert into.product_violations[0][:2] == (0, 0)
    assert into.intertwines
    back = check_morphism(st, a, p, p, p)
    assert back.passed


def test_morphism_from_star_holds_for_every_nijenhuis_fixture():
    fixtures = [
        ("leftunit2", [[0, 0], [0, 1]]),
        ("pair3", [[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
        ("trunc3", [[0, 0, 0], [0, 0, 0], [1, 0, 0]]),
    ]
    for name, rows in fixtures:
        a = CAT[name]
        p = operator(rows)
        assert check_operator(a, p, KIND_NIJENHUIS).passed, name
        st = star_product(a, p)
        assert check_morphism(st, a, p, p, p).passed, name


def test_classify_square_square_zero_case_agrees():
    a = CAT["leftunit2"]
    cls = classify_square(a, operator([[0, 0], [1, 0]]))
    assert cls.square_zero and not cls.idempotent
    case = cls.cases[0]
    assert case.condition == "square_zero"
    assert case.equivalent_kind == rota_baxter(0)
    assert case.is_rn and case.other_holds and case.agree


def test_classify_square_idempotent_case_disagrees():
    a = CAT["leftunit2"]
    cls = classify_square(a, operator([[0, 0], [0, 1]]))
    assert cls.idempotent
    case = next(c for c in cls.cases if c.condition == "idempotent")
    assert case.equivalent_kind == rota_baxter(-1)
    assert not case.is_rn
    assert case.other_holds
    assert not case.agree


def test_classify_square_involutive_case():
    a = CAT["leftunit2"]
    cls = classify_square(a, operator([[1, 0], [0, -1]]))
    assert cls.involutive
    case = next(c for c in cls.cases if c.condition == "involutive")
    assert case.equivalent_kind == modified_rota_baxter(-1)
    assert case.is_rn and case.other_holds and case.agree


def test_modified_rota_baxter_is_the_derivation_style_identity():
    # P(ab) = P(a)b + aP(b) + w ab, checked at a transparent instance
    a = CAT["leftunit2"]
    p = operator([[1, 0], [0, -1]])
    assert check_operator(a, p, modified_rota_baxter(-1)).passed
    assert not check_operator(a, p, modified_rota_baxter(1)).passed


def test_check_operator_rejects_shape_mismatch():
    with pytest.raises(InputError):
        check_operator(CAT["pair3"], operator([[1, 0], [0, 1]]), KIND_RN)
