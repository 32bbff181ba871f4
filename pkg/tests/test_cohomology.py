"""Cochain complex: differentials, consistency gating, dimension reports."""

from __future__ import annotations

from fractions import Fraction

import pytest

from rnalg.catalog import catalog, operator
from rnalg.cohomology import ComplexBuilder, cohomology_dims, flatten_map
from rnalg.errors import BudgetError
from rnalg.exactlin import Matrix
from rnalg.representation import regular_representation

CAT = catalog()


def _builder(name, rows):
    a = CAT[name]
    p = operator(rows)
    return ComplexBuilder(a, p, regular_representation(a, p))


def test_flatten_map_uses_horner_times_dimv_layout():
    seen = {}

    def fn(multi):
        seen[multi] = True
        return [Fraction(multi[0] * 10 + multi[1]), Fraction(0)]

    flat = flatten_map(2, 2, 2, fn)
    assert len(flat) == 8
    assert sorted(seen) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    # multi (1, 0) sits at Horner index 2, value slot 0
    assert flat[2 * 2 + 0] == Fraction(10)


def test_ambient_dimensions_scale_geometrically():
    b = _builder("leftunit2", [[0, 0], [0, 0]])
    assert [b.amb(n) for n in range(4)] == [2, 4, 8, 16]


def test_delta_squared_vanishes_on_catalog_instances():
    for name in ("zero1", "leftunit2", "pair3", "trunc3"):
        a = CAT[name]
        b = _builder(name, [[0] * a.dim for _ in range(a.dim)])
        for n in range(3):
            assert b.delta(n + 1).mul(b.delta(n)).is_zero(), (name, n)


def test_delta_anchor_degree_zero_on_leftunit2():
    # (delta0 v)(a) = a.v - v.a; on the regular bimodule this is the commutator
    b = _builder("leftunit2", [[0, 0], [0, 0]])
    d0 = b.delta(0)
    a = CAT["leftunit2"]
    for j in range(2):
        v = a.basis_vector(j)
        image = d0.apply(v)
        for i in range(2):
            expect = [x - y for x, y in zip(a.multiply(a.basis_vector(i), v),
                                            a.multiply(v, a.basis_vector(i)))]
            assert image[i * 2:(i + 1) * 2] == expect


def test_psi_is_identity_then_zero_at_identity_operator():
    b = _builder("leftunit2", [[1, 0], [0, 1]])
    assert b.psi(1).eq(Matrix.identity(4))
    assert b.psi(2).is_zero()


def test_psi_degree_zero_is_identity_on_values():
    b = _builder("pair3", [[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    assert b.psi(0).eq(Matrix.identity(3))


def test_zero_algebra_dimension_table():
    a = CAT["zero1"]
    p = operator([[0]])
    result = cohomology_dims(a, p, regular_representation(a, p), 2)
    table = [(d.degree, d.dim_z, d.dim_b, d.dim_h, d.consistent)
             for d in result.degrees]
    assert table == [(0, 0, 0, 0, True), (1, 2, 1, 1, True), (2, 2, 0, 2, True)]
    for d in result.degrees:
        assert all(d.residual_zero.values())


def test_noncommutative_base_gates_low_degrees():
    # the combined differential fails d.d = 0 entering degrees 0 and 1 here,
    # so those quotients are reported as undefined rather than as numbers
    a = CAT["leftunit2"]
    p = operator([[0, 0], [0, 0]])
    result = cohomology_dims(a, p, regular_representation(a, p), 2)
    assert [d.dim_h for d in result.degrees] == [None, None, 0]
    assert [d.consistent for d in result.degrees] == [False, False, True]
    assert (result.at(2).dim_z, result.at(2).dim_b) == (4, 4)


def test_inconsistent_degree_records_witness_entry():
    a = CAT["leftunit2"]
    p = operator([[0, 0], [0, 0]])
    result = cohomology_dims(a, p, regular_representation(a, p), 1)
    report = result.at(0)
    assert not report.residual_zero["d2"]
    w = report.witnesses["d2"]
    assert w is not None and w.value != 0


def test_psi_delta_residuals_nonzero_on_audited_instances():
    # frozen facts: these residuals are exactly nonzero at degrees 1 and 2
    for name, rows in (("pair3", [[1, 0, 0], [0, 0, 0], [0, 0, 0]]),
                       ("leftunit2", [[1, 0], [0, 1]])):
        b = _builder(name, rows)
        for n in (1, 2):
            assert not b.psi_delta_residual(n).is_zero(), (name, n)
            assert not b.d_square_residual(n).is_zero(), (name, n)


def test_combined_differential_shapes():
    b = _builder("leftunit2", [[0, 0], [0, 0]])
    d1 = b.d(1)
    assert d1.rows == b.amb(2) + b.amb(1)
    assert d1.cols == b.domain_dim(1)
    assert b.domain_dim(1) == b.amb(1) + b.rno_basis(0).cols


def test_budget_cap_raises_budget_error():
    a = CAT["mat2"]
    p = Matrix.zeros(4, 4)
    with pytest.raises(BudgetError):
        ComplexBuilder(a, p, regular_representation(a, p), budget=10).delta(2)
