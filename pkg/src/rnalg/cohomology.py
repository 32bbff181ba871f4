"""Cochain complexes attached to an operator-compatible bimodule.

Flattening convention: an n-cochain f: A^n -> V is a vector of length
dimV * dimA^n.  Multi-indices (i1, ..., in) are ordered lexicographically
with i1 most significant, and each multi-index owns a contiguous block of
dimV coordinates, so the flat position of (I, v) is offset(I) * dimV + v
with offset(I) = ((i1 * dimA + i2) * dimA + ...).

The Hochschild differential delta and the restricted differential share
one formula; the restricted one acts on the constrained subspace whose
members satisfy f(P(a1), a2, ...) = xi f(a1, ..., an) (first slot only).
The twist map is

  psi_n(f)(a1..an) = f(Pa1..Pan) - sum_i xi f(Pa1,..,ai,..,Pan) + xi^2 f(a1..an)

with slot i left unreplaced in the i-th subtracted term and psi_0 = Id.
The combined differential on C^n_A (+) C^(n-1)_RNO is

  d_n(f, g) = (delta_n f, -partial_(n-1) g - psi_n f),      d_0 f = (delta_0 f, -f).

Nothing here assumes the combined complex squares to zero: composites are
computed exactly, outputs stay in ambient coordinates, and non-closure of
the constrained subspace under partial/psi is reported, never projected
away.  Quotient dimensions are refused wherever the residuals do not
vanish.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra
from .errors import BudgetError, InputError, resolve_budget
from .exactlin import Matrix, kernel_basis, kron, rank
from .representation import Bimodule

Q = Fraction

RESIDUAL_NAMES = ("delta2", "partial2", "psi_delta", "d2")


def flat_offset(dim_a: int, multi: tuple[int, ...]) -> int:
    off = 0
    for i in multi:
        off = off * dim_a + i
    return off


def flat_index(dim_a: int, dim_v: int, multi: tuple[int, ...], v: int) -> int:
    return flat_offset(dim_a, multi) * dim_v + v


def flatten_map(dim_a: int, dim_v: int, n: int, value_at) -> list[Fraction]:
    """Flatten multi-index -> vector data into cochain coordinates."""
    out = [Fraction(0)] * (dim_v * dim_a ** n)
    for multi in itertools.product(range(dim_a), repeat=n):
        vec = value_at(multi)
        base = flat_offset(dim_a, multi) * dim_v
        for v in range(dim_v):
            out[base + v] = Fraction(vec[v])
    return out


def unflatten(coords: list[Fraction], dim_a: int, dim_v: int, n: int,
              multi: tuple[int, ...]) -> list[Fraction]:
    base = flat_offset(dim_a, multi) * dim_v
    return list(coords[base : base + dim_v])


class ComplexBuilder:
    """Caches the matrices of one (algebra, operator, bimodule) complex."""

    def __init__(self, a: Algebra, p: Matrix, m: Bimodule, budget: int | None = None):
        if m.dim_a != a.dim:
            raise InputError("bimodule action count != algebra dimension")
        if p.rows != a.dim or p.cols != a.dim:
            raise InputError("operator shape != algebra dimension")
        if m.xi is None:
            raise InputError("bimodule carries no xi")
        self.a = a
        self.p = p
        self.m = m
        self.budget = resolve_budget(budget)
        self._delta: dict[int, Matrix] = {}
        self._psi: dict[int, Matrix] = {}
        self._rno: dict[int, Matrix] = {}

    def amb(self, n: int) -> int:
        return self.m.dim_v * self.a.dim ** n

    def _guard(self, n: int) -> None:
        size = self.amb(n)
        if size > self.budget:
            raise BudgetError(
                f"cochain space at degree {n} needs {size} coordinates, budget is {self.budget}")

    def delta(self, n: int) -> Matrix:
        """Hochschild differential C^n -> C^(n+1) on ambient coordinates."""
        if n in self._delta:
            return self._delta[n]
        if n < 0:
            raise InputError("degree must be >= 0")
        self._guard(n + 1)
        da, dv = self.a.dim, self.m.dim_v
        rows, cols = self.amb(n + 1), self.amb(n)
        flat = [Fraction(0)] * (rows * cols)
        if n == 0:
            for t in range(da):
                diff = self.m.left[t].sub(self.m.right[t])
                for w in range(dv):
                    col = w
                    for v in range(dv):
                        val = diff.at(v, w)
                        if val:
                            flat[(t * dv + v) * cols + col] += val
        else:
            sign_last = Fraction(-1 if (n + 1) % 2 else 1)
            for multi in itertools.product(range(da), repeat=n):
                base_col = flat_offset(da, multi) * dv
                for w in range(dv):
                    col = base_col + w
                    for i1 in range(da):
                        rbase = flat_offset(da, (i1,) + multi) * dv
                        lm = self.m.left[i1]
                        for v in range(dv):
                            val = lm.at(v, w)
                            if val:
                                flat[(rbase + v) * cols + col] += val
                    for slot in range(1, n + 1):
                        sign = Fraction(-1 if slot % 2 else 1)
                        target = multi[slot - 1]
                        for pi in range(da):
                            crow = self.a.c[pi]
                            for qi in range(da):
                                cv = crow[qi][target]
                                if cv:
                                    out_multi = multi[: slot - 1] + (pi, qi) + multi[slot:]
                                    row = flat_offset(da, out_multi) * dv + w
                                    flat[row * cols + col] += sign * cv
                    for t in range(da):
                        rbase = flat_offset(da, multi + (t,)) * dv
                        rm = self.m.right[t]
                        for v in range(dv):
                            val = rm.at(v, w)
                            if val:
                                flat[(rbase + v) * cols + col] += sign_last * val
        out = Matrix(rows, cols, flat)
        self._delta[n] = out
        return out

    def partial(self, n: int) -> Matrix:
        """Restricted differential; same formula as delta on ambient coordinates."""
        return self.delta(n)

    def psi(self, n: int) -> Matrix:
        if n in self._psi:
            return self._psi[n]
        self._guard(n)
        dv_id = Matrix.identity(self.m.dim_v)
        if n == 0:
            out = dv_id
        else:
            pt = self.p.transpose()
            da_id = Matrix.identity(self.a.dim)
            xi = self.m.xi
            out = kron([pt] * n + [dv_id])
            for i in range(n):
                slots = [pt] * n
                slots[i] = da_id
                out = out.sub(kron(slots + [xi]))
            out = out.add(kron([da_id] * n + [xi.mul(xi)]))
        self._psi[n] = out
        return out

    def rno_constraint(self, n: int) -> Matrix:
        """Operator whose kernel is the first-slot constrained subspace."""
        self._guard(n)
        if n == 0:
            return Matrix.zeros(0, self.amb(0))
        pt = self.p.transpose()
        da_id = Matrix.identity(self.a.dim)
        dv_id = Matrix.identity(self.m.dim_v)
        precompose = kron([pt] + [da_id] * (n - 1) + [dv_id])
        postcompose = kron([da_id] * n + [self.m.xi])
        return precompose.sub(postcompose)

    def rno_basis(self, n: int) -> Matrix:
        """Canonical basis of the constrained subspace, one vector per column."""
        if n in self._rno:
            return self._rno[n]
        vecs = kernel_basis(self.rno_constraint(n))
        out = Matrix.zeros(self.amb(n), 0)
        if vecs:
            flat = [Fraction(0)] * (self.amb(n) * len(vecs))
            for j, v in enumerate(vecs):
                for i, x in enumerate(v):
                    flat[i * len(vecs) + j] = x
            out = Matrix(self.amb(n), len(vecs), flat)
        self._rno[n] = out
        return out

    def d_ambient(self, n: int) -> Matrix:
        """Combined differential on ambient (+) ambient coordinates."""
        if n == 0:
            return self.delta(0).vstack(self.psi(0).scale(-1))
        top = self.delta(n).hstack(Matrix.zeros(self.amb(n + 1), self.amb(n - 1)))
        bottom = self.psi(n).scale(-1).hstack(self.partial(n - 1).scale(-1))
        return top.vstack(bottom)

    def domain_inclusion(self, n: int) -> Matrix:
        """Columns spanning C^n_A (+) C^(n-1)_RNO inside ambient (+) ambient."""
        if n == 0:
            return Matrix.identity(self.amb(0))
        first = Matrix.identity(self.amb(n))
        second = self.rno_basis(n - 1)
        top = first.hstack(Matrix.zeros(self.amb(n), second.cols))
        bottom = Matrix.zeros(second.rows, first.cols).hstack(second)
        return top.vstack(bottom)

    def d(self, n: int) -> Matrix:
        """Combined differential restricted to its stated domain.

        Columns are ambient C^n_A coordinates followed by coefficients in
        the canonical basis of the degree n-1 constrained subspace; rows
        stay ambient so non-closure remains visible.
        """
        return self.d_ambient(n).mul(self.domain_inclusion(n))

    def domain_dim(self, n: int) -> int:
        if n == 0:
            return self.amb(0)
        return self.amb(n) + self.rno_basis(n - 1).cols

    def d_square_residual(self, n: int) -> Matrix:
        """d_(n+1) . d_n on the restricted domain, in ambient output coordinates."""
        return self.d_ambient(n + 1).mul(self.d_ambient(n)).mul(self.domain_inclusion(n))

    def psi_delta_residual(self, n: int) -> Matrix:
        """psi_(n+1) delta_n - partial_n psi_n on ambient C^n."""
        return self.psi(n + 1).mul(self.delta(n)).sub(self.partial(n).mul(self.psi(n)))

    def image_closed(self, n: int) -> bool:
        """Does the image of d_n land back in C^(n+1)_A (+) C^n_RNO?"""
        dn = self.d(n)
        top_rows = self.amb(n + 1)
        second = Matrix(dn.rows - top_rows, dn.cols,
                        dn.entries[top_rows * dn.cols :])
        basis = self.rno_basis(n)
        if second.is_zero():
            return True
        stacked = basis.hstack(second)
        return rank(stacked) == rank(basis)


@dataclass(frozen=True)
class ComplexMatrices:
    degree: int
    delta: Matrix
    partial: Matrix
    psi: Matrix
    rno_basis: Matrix
    d: Matrix


def hochschild_delta(a: Algebra, m: Bimodule, n: int, budget: int | None = None) -> Matrix:
    if m.xi is None:
        m = Bimodule(m.dim_v, m.left, m.right, rho=m.rho, xi=Matrix.zeros(m.dim_v, m.dim_v))
    return ComplexBuilder(a, Matrix.zeros(a.dim, a.dim), m, budget).delta(n)


def rno_subspace(a: Algebra, p: Matrix, m: Bimodule, n: int,
                 budget: int | None = None) -> list[list[Fraction]]:
    b = ComplexBuilder(a, p, m, budget).rno_basis(n)
    return [b.col_list(j) for j in range(b.cols)]


def psi_matrix(a: Algebra, p: Matrix, m: Bimodule, n: int,
               budget: int | None = None) -> Matrix:
    return ComplexBuilder(a, p, m, budget).psi(n)


def combined_d(a: Algebra, p: Matrix, m: Bimodule, n: int,
               budget: int | None = None) -> Matrix:
    return ComplexBuilder(a, p, m, budget).d(n)


def complex_matrices(a: Algebra, p: Matrix, m: Bimodule, n: int,
                     budget: int | None = None) -> ComplexMatrices:
    b = ComplexBuilder(a, p, m, budget)
    return ComplexMatrices(n, b.delta(n), b.partial(n), b.psi(n),
                           b.rno_basis(n), b.d(n))


@dataclass(frozen=True)
class ResidualWitness:
    row: int
    col: int
    value: Fraction


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    dim_space: int
    dim_z: int
    dim_b: int
    dim_h: int | None
    consistent: bool
    residual_zero: dict
    witnesses: dict


@dataclass(frozen=True)
class CohomologyResult:
    max_degree: int
    degrees: tuple[DegreeReport, ...]

    def at(self, n: int) -> DegreeReport:
        return self.degrees[n]


def _first_nonzero(m: Matrix) -> ResidualWitness | None:
    for i in range(m.rows):
        base = i * m.cols
        for j in range(m.cols):
            if m.entries[base + j]:
                return ResidualWitness(i, j, m.entries[base + j])
    return None


def cohomology_dims(a: Algebra, p: Matrix, m: Bimodule, max_n: int,
                    budget: int | None = None) -> CohomologyResult:
    """Kernel/image/quotient dimensions of the combined complex per degree.

    H^n is reported only when the composite into degree n vanishes, the
    image of d_(n-1) closes inside the stated codomain, and the composite
    leaving degree n vanishes as well; otherwise the raw kernel and image
    dimensions are kept and the degree is flagged inconsistent.  Residual
    flags at degree n cover the composites leaving degree n, so spaces one
    degree past max_n are touched.
    """
    if max_n < 1:
        raise InputError("max degree must be >= 1")
    b = ComplexBuilder(a, p, m, budget)
    ranks = {n: rank(b.d(n)) for n in range(max_n + 1)}
    reports = []
    for n in range(max_n + 1):
        dim_space = b.domain_dim(n)
        dim_z = dim_space - ranks[n]
        dim_b = ranks[n - 1] if n >= 1 else 0
        residual_zero = {
            "delta2": b.delta(n + 1).mul(b.delta(n)).is_zero(),
            "partial2": (b.partial(n).mul(b.partial(n - 1)).is_zero() if n >= 1 else True),
            "psi_delta": b.psi_delta_residual(n).is_zero(),
            "d2": b.d_square_residual(n).is_zero(),
        }
        consistent = residual_zero["d2"]
        if n >= 1:
            incoming_zero = b.d_square_residual(n - 1).is_zero()
            incoming_closed = b.image_closed(n - 1)
            consistent = consistent and incoming_zero and incoming_closed
        witnesses = {}
        for name, flag in residual_zero.items():
            if not flag:
                if name == "delta2":
                    mat = b.delta(n + 1).mul(b.delta(n))
                elif name == "partial2":
                    mat = b.partial(n).mul(b.partial(n - 1))
                elif name == "psi_delta":
                    mat = b.psi_delta_residual(n)
                else:
                    mat = b.d_square_residual(n)
                witnesses[name] = _first_nonzero(mat)
        dim_h = dim_z - dim_b if consistent else None
        reports.append(DegreeReport(n, dim_space, dim_z, dim_b, dim_h,
                                    consistent, residual_zero, witnesses))
    return CohomologyResult(max_n, tuple(reports))


@dataclass(frozen=True)
class ConsistencyReport:
    degree: int
    matrices: dict

    def residual_zero(self, name: str) -> bool:
        return self.matrices[name].is_zero()


def consistency_residuals(a: Algebra, p: Matrix, m: Bimodule, max_n: int,
                          budget: int | None = None) -> list[ConsistencyReport]:
    """Exact residual matrices per degree n <= max_n.

    delta2 = delta_(n+1) delta_n, partial2 = partial_n partial_(n-1)
    (degree >= 1), psi_delta = psi_(n+1) delta_n - partial_n psi_n, and
    d2 = d_(n+1) d_n on the restricted domain.
    """
    b = ComplexBuilder(a, p, m, budget)
    out = []
    for n in range(max_n + 1):
        mats = {
            "delta2": b.delta(n + 1).mul(b.delta(n)),
            "psi_delta": b.psi_delta_residual(n),
            "d2": b.d_square_residual(n),
        }
        if n >= 1:
            mats["partial2"] = b.partial(n).mul(b.partial(n - 1))
        out.append(ConsistencyReport(n, mats))
    return out
