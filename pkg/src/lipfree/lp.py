"""Dense exact-rational simplex method.

Two-phase primal simplex on a Fraction tableau with Bland's rule, so it
cannot cycle. Problems here have at most a few hundred columns; exactness
matters, speed does not.

Two entry points:

* :func:`linprog` takes matrices, scipy-style.
* :class:`LPModel` builds a model from named variables and sparse linear
  expressions, which is how the norm epigraphs are assembled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass
class LPResult:
    status: str
    value: Fraction | None = None
    x: list[Fraction] = field(default_factory=list)
    pivots: int = 0

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Rows ``A x = b`` with ``b >= 0`` and a basis; objective kept separately."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int, cost_rows):
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            inv = 1 / piv
            for j, v in enumerate(row):
                if v:
                    row[j] = v * inv
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        b_r = self.rhs[r]
        for k, other in enumerate(self.rows):
            if k == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[k] -= f * b_r
        for cost in cost_rows:
            # cost = [coeffs..., constant]; constant tracks -objective value
            f = cost[c]
            if f:
                for j in nz:
                    cost[j] -= f * row[j]
                cost[-1] -= f * b_r
        self.basis[r] = c
        self.pivots += 1

    def run(self, cost, allowed: int, others=()) -> bool:
        """Minimise ``cost`` (reduced form). Return False if unbounded."""
        while True:
            enter = -1
            for j in range(allowed):
                if cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return True
            leave = -1
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave < 0:
                return False
            self.pivot(leave, enter, (cost,) + tuple(others))


def _solve_standard(c, A, b) -> LPResult:
    """min c.x  s.t.  A x = b, x >= 0."""
    m = len(A)
    n = len(c)
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(v) for v in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)

    # reuse an existing unit column as basic where possible
    basis = [-1] * m
    for j in range(n):
        col_nz = [i for i in range(m) if rows[i][j] != 0]
        if len(col_nz) == 1 and rows[col_nz[0]][j] == 1 and basis[col_nz[0]] < 0:
            basis[col_nz[0]] = j
    need = [i for i in range(m) if basis[i] < 0]
    n_art = len(need)
    for i in range(m):
        rows[i].extend([_ZERO] * n_art)
    for k, i in enumerate(need):
        rows[i][n + k] = Fraction(1)
        basis[i] = n + k
    tab = _Tableau(rows, rhs, basis)
    width = n + n_art

    def reduced(costs):
        red = list(costs) + [_ZERO]
        for i, bj in enumerate(tab.basis):
            f = red[bj]
            if f:
                row = tab.rows[i]
                for j in range(width):
                    if row[j]:
                        red[j] -= f * row[j]
                red[-1] -= f * tab.rhs[i]
        return red

    real_cost = [Fraction(v) for v in c] + [_ZERO] * n_art
    if n_art:
        phase1 = [_ZERO] * n + [Fraction(1)] * n_art
        p1 = reduced(phase1)
        p2 = reduced(real_cost)
        tab.run(p1, width, others=(p2,))
        if -p1[-1] != 0:
            return LPResult(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis
        drop = []
        for i in range(m):
            if tab.basis[i] >= n:
                row = tab.rows[i]
                j = next((j for j in range(n) if row[j] != 0), -1)
                if j < 0:
                    drop.append(i)
                else:
                    tab.pivot(i, j, (p2,))
        for i in reversed(drop):
            del tab.rows[i]
            del tab.rhs[i]
            del tab.basis[i]
        cost = p2
    else:
        cost = reduced(real_cost)
    if not tab.run(cost, n):
        return LPResult(UNBOUNDED, pivots=tab.pivots)
    x = [_ZERO] * n
    for i, bj in enumerate(tab.basis):
        if bj < n:
            x[bj] = tab.rhs[i]
    value = sum((Fraction(cj) * xj for cj, xj in zip(c, x) if xj), _ZERO)
    if value != -cost[-1]:
        raise ArithmeticError("simplex objective bookkeeping mismatch")
    return LPResult(OPTIMAL, value, x, tab.pivots)


def linprog(c: Sequence, A_ub=None, b_ub=None, A_eq=None, b_eq=None,
            free: Iterable[int] = ()) -> LPResult:
    """Minimise ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``.

    Variables are nonnegative except those listed in ``free``.
    """
    n = len(c)
    free = sorted(set(free))
    A_ub = [list(r) for r in (A_ub or [])]
    b_ub = list(b_ub or [])
    A_eq = [list(r) for r in (A_eq or [])]
    b_eq = list(b_eq or [])
    n_free = len(free)
    n_slack = len(A_ub)
    width = n + n_free + n_slack

    def extend(row, slack_idx=None):
        out = [Fraction(v) for v in row] + [-Fraction(row[j]) for j in free]
        out += [_ZERO] * n_slack
        if slack_idx is not None:
            out[n + n_free + slack_idx] = Fraction(1)
        return out

    A = [extend(r, i) for i, r in enumerate(A_ub)] + [extend(r) for r in A_eq]
    b = [Fraction(v) for v in b_ub] + [Fraction(v) for v in b_eq]
    cc = [Fraction(v) for v in c] + [-Fraction(c[j]) for j in free] + [_ZERO] * n_slack
    assert all(len(r) == width for r in A)
    res = _solve_standard(cc, A, b)
    if res.ok:
        x = res.x[:n]
        for k, j in enumerate(free):
            x[j] -= res.x[n + k]
        res.x = x
    return res


class LinExpr:
    """Sparse linear expression ``sum(coef * var) + const``."""

    __slots__ = ("terms", "const")

    def __init__(self, terms=None, const=0):
        self.terms: dict[int, Fraction] = dict(terms or {})
        self.const = Fraction(const)

    @classmethod
    def var(cls, idx: int) -> "LinExpr":
        return cls({idx: Fraction(1)})

    def copy(self):
        return LinExpr(self.terms, self.const)

    def __add__(self, other):
        out = self.copy()
        if isinstance(other, LinExpr):
            for k, v in other.terms.items():
                out.terms[k] = out.terms.get(k, _ZERO) + v
            out.const += other.const
        else:
            out.const += Fraction(other)
        return out

    __radd__ = __add__

    def __neg__(self):
        return LinExpr({k: -v for k, v in self.terms.items()}, -self.const)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LinExpr) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return LinExpr({i: v * k for i, v in self.terms.items()}, self.const * k)

    __rmul__ = __mul__

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return self.const + sum((v * x[k] for k, v in self.terms.items()), _ZERO)


class LPModel:
    """Incremental LP builder over :class:`LinExpr`."""

    def __init__(self):
        self.names: list[str] = []
        self.free: list[int] = []
        self.eqs: list[LinExpr] = []
        self.les: list[LinExpr] = []

    @property
    def n_vars(self) -> int:
        return len(self.names)

    def add_var(self, name: str = "", free: bool = False) -> LinExpr:
        idx = len(self.names)
        self.names.append(name or f"v{idx}")
        if free:
            self.free.append(idx)
        return LinExpr.var(idx)

    def add_eq(self, lhs: LinExpr, rhs=0):
        """Constrain ``lhs == rhs``."""
        self.eqs.append(lhs - rhs)

    def add_le(self, lhs: LinExpr, rhs=0):
        """Constrain ``lhs <= rhs``."""
        self.les.append(lhs - rhs)

    def add_ge(self, lhs: LinExpr, rhs=0):
        self.add_le(-(lhs - rhs) if isinstance(lhs, LinExpr) else rhs - lhs)

    def _dense(self, exprs):
        rows, rhs = [], []
        for e in exprs:
            row = [_ZERO] * self.n_vars
            for k, v in e.terms.items():
                row[k] = v
            rows.append(row)
            rhs.append(-e.const)
        return rows, rhs

    def minimize(self, objective: LinExpr) -> LPResult:
        c = [_ZERO] * self.n_vars
        for k, v in objective.terms.items():
            c[k] = v
        A_ub, b_ub = self._dense(self.les)
        A_eq, b_eq = self._dense(self.eqs)
        res = linprog(c, A_ub, b_ub, A_eq, b_eq, free=self.free)
        if res.ok:
            res.value += objective.const
        return res
