"""Bimodules over structure-constant algebras and operator-compatible actions.

A bimodule is (V, l, r, rho) with one left-action and one right-action
matrix per algebra basis element.  Validation reports two profiles: the
axioms as written with the given twist rho, and the standard profile with
rho replaced by the identity.  An operator-compatible action adds xi with
four compatibility conditions against P; l(P(a)) always means the linear
extension sum_k P[k][i] l(e_k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra
from .errors import InputError
from .exactlin import Matrix

Q = Fraction


class Bimodule:
    def __init__(self, dim_v: int, left: list[Matrix], right: list[Matrix],
                 rho: Matrix | None = None, xi: Matrix | None = None):
        if dim_v < 0:
            raise InputError("module dimension must be >= 0")
        for m in list(left) + list(right):
            if m.rows != dim_v or m.cols != dim_v:
                raise InputError("action matrices must be dimV x dimV")
        if len(left) != len(right):
            raise InputError("left/right action counts differ")
        self.dim_v = dim_v
        self.left = list(left)
        self.right = list(right)
        self.rho = rho if rho is not None else Matrix.identity(dim_v)
        if self.rho.rows != dim_v or self.rho.cols != dim_v:
            raise InputError("rho must be dimV x dimV")
        self.xi = xi
        if xi is not None and (xi.rows != dim_v or xi.cols != dim_v):
            raise InputError("xi must be dimV x dimV")
        self.bimodule_report: "BimoduleReport | None" = None
        self.rn_report: "RNRepresentationReport | None" = None

    @property
    def dim_a(self) -> int:
        return len(self.left)

    def left_of(self, a: Algebra, vec: list[Fraction]) -> Matrix:
        """Linear extension of the left action to a coordinate vector."""
        out = Matrix.zeros(self.dim_v, self.dim_v)
        for i, x in enumerate(vec):
            if x:
                out = out.add(self.left[i].scale(x))
        return out

    def right_of(self, a: Algebra, vec: list[Fraction]) -> Matrix:
        out = Matrix.zeros(self.dim_v, self.dim_v)
        for i, x in enumerate(vec):
            if x:
                out = out.add(self.right[i].scale(x))
        return out


@dataclass(frozen=True)
class ConditionViolation:
    condition: str
    indices: tuple[int, ...]
    residual: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class ProfileReport:
    violations: tuple[ConditionViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class BimoduleReport:
    with_rho: ProfileReport
    standard: ProfileReport

    @property
    def passed_standard(self) -> bool:
        return self.standard.passed

    @property
    def passed_with_rho(self) -> bool:
        return self.with_rho.passed


def _check_axioms(a: Algebra, m: Bimodule, rho: Matrix) -> ProfileReport:
    violations = []

    def note(cond, idx, diff):
        if not diff.is_zero():
            violations.append(ConditionViolation(cond, idx, tuple(tuple(r) for r in diff.to_rows())))

    for i in range(a.dim):
        note("rho-left-commute", (i,), rho.mul(m.left[i]).sub(m.left[i].mul(rho)))
        note("rho-right-commute", (i,), rho.mul(m.right[i]).sub(m.right[i].mul(rho)))
    basis = [a.basis_vector(i) for i in range(a.dim)]
    for i in range(a.dim):
        for j in range(a.dim):
            prod = a.multiply(basis[i], basis[j])
            lp = m.left_of(a, prod)
            rp = m.right_of(a, prod)
            note("left-action-multiplicative", (i, j),
                 lp.mul(rho).sub(m.left[i].mul(m.left[j])))
            note("right-action-antimultiplicative", (i, j),
                 rp.mul(rho).sub(m.right[j].mul(m.right[i])))
            note("left-right-commute", (i, j),
                 m.left[i].mul(m.right[j]).sub(m.right[j].mul(m.left[i])))
    return ProfileReport(tuple(violations))


def check_bimodule(a: Algebra, m: Bimodule) -> BimoduleReport:
    """Evaluate the bimodule axioms with the given rho and with rho = Id."""
    if m.dim_a != a.dim:
        raise InputError("action count != algebra dimension")
    report = BimoduleReport(_check_axioms(a, m, m.rho),
                            _check_axioms(a, m, Matrix.identity(m.dim_v)))
    m.bimodule_report = report
    return report


@dataclass(frozen=True)
class RNRepresentationReport:
    violations: tuple[ConditionViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_rn_representation(a: Algebra, p: Matrix, m: Bimodule) -> RNRepresentationReport:
    """Evaluate the four xi/P compatibility conditions on basis elements."""
    if m.dim_a != a.dim:
        raise InputError("action count != algebra dimension")
    if p.rows != a.dim or p.cols != a.dim:
        raise InputError("operator shape != algebra dimension")
    if m.xi is None:
        raise InputError("bimodule carries no xi")
    xi = m.xi
    violations = []

    def note(cond, idx, diff):
        if not diff.is_zero():
            violations.append(ConditionViolation(cond, idx, tuple(tuple(r) for r in diff.to_rows())))

    lp = [m.left_of(a, p.apply(a.basis_vector(i))) for i in range(a.dim)]
    rp = [m.right_of(a, p.apply(a.basis_vector(i))) for i in range(a.dim)]
    for i in range(a.dim):
        note("xi-left-intertwine", (i,), xi.mul(m.left[i]).sub(lp[i].mul(xi)))
        note("xi-right-intertwine", (i,), xi.mul(m.right[i]).sub(rp[i].mul(xi)))
    for i in range(a.dim):
        for j in range(a.dim):
            note("left-operator-exchange", (i, j),
                 lp[i].mul(m.left[j]).sub(m.left[i].mul(lp[j])))
            note("right-operator-exchange", (i, j),
                 rp[i].mul(m.right[j]).sub(m.right[j].mul(rp[i])))
    report = RNRepresentationReport(tuple(violations))
    m.rn_report = report
    return report


def regular_representation(a: Algebra, p: Matrix) -> Bimodule:
    """V = A with multiplication actions, rho = Id, xi = P; validators attached."""
    if p.rows != a.dim or p.cols != a.dim:
        raise InputError("operator shape != algebra dimension")
    m = Bimodule(a.dim,
                 [a.left_mult_matrix(i) for i in range(a.dim)],
                 [a.right_mult_matrix(i) for i in range(a.dim)],
                 rho=Matrix.identity(a.dim), xi=p)
    check_bimodule(a, m)
    check_rn_representation(a, p, m)
    return m


def induced_actions(a: Algebra, p: Matrix, m: Bimodule) -> tuple[list[Matrix], list[Matrix]]:
    """The twisted actions l'(a) = l(a)xi - xi l(a) + l(P(a)), same shape for r'."""
    if m.xi is None:
        raise InputError("bimodule carries no xi")
    xi = m.xi
    left, right = [], []
    for i in range(a.dim):
        pa = p.apply(a.basis_vector(i))
        left.append(m.left[i].mul(xi).sub(xi.mul(m.left[i])).add(m.left_of(a, pa)))
        right.append(m.right[i].mul(xi).sub(xi.mul(m.right[i])).add(m.right_of(a, pa)))
    return left, right


def induce_representation(a: Algebra, p: Matrix, m: Bimodule,
                          validate: bool = True) -> Bimodule:
    """Build the induced bimodule and re-run both validators on the result.

    With validate=True (the default) the input must already pass the
    standard bimodule profile and the xi conditions; the induced actions
    are a definition, so their validity is re-checked, never assumed.
    """
    if validate:
        if not check_bimodule(a, m).passed_standard:
            raise InputError("input bimodule fails the standard profile")
        if not check_rn_representation(a, p, m).passed:
            raise InputError("input bimodule fails the xi compatibility conditions")
    left, right = induced_actions(a, p, m)
    out = Bimodule(m.dim_v, left, right, rho=m.rho, xi=m.xi)
    check_bimodule(a, out)
    check_rn_representation(a, p, out)
    return out
