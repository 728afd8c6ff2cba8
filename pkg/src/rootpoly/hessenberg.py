"""Triangular eigenproblem solver.

Given the interval lambda^(1) < ... < lambda^(n) = lambda, the diagonal
eigenvalues eps and the strictly lower matrix elements d of a regular
triangular operator, the monic eigenfunction p_lambda = sum_mu c_mu m_mu is
the first-column expansion of a lower Hessenberg determinant divided by
E_lambda = prod_{mu < lambda} (eps_lambda - eps_mu).

Three independent evaluations are provided (recurrence, sum over chains,
explicit determinant).  All indices below are 0-based: ``d[(j, k)]`` with
``j > k`` is the element in row j, column k.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .exact_arith import ONE, ZERO, Scalar, reduce_ratfunc, substitute


class RegularityViolation(ArithmeticError):
    """Two comparable weights share an eigenvalue."""


@dataclass
class TriangularData:
    interval: list
    eps: dict
    d: dict
    a: dict | None = None
    labels: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.interval)

    @property
    def leading(self):
        return self.interval[-1]

    def eps_at(self, j: int) -> Scalar:
        return Scalar.coerce(self.eps[self.interval[j]])

    def gaps(self) -> list:
        """eps_lambda - eps_j for j < n-1, checked nonzero."""
        top = self.eps_at(self.n - 1)
        out = []
        for j in range(self.n - 1):
            g = top - self.eps_at(j)
            if g.is_zero():
                raise RegularityViolation(
                    f"eigenvalue of {self.interval[j]} coincides with that of {self.leading}")
            out.append(g)
        return out

    def column(self, k: int) -> list:
        """Nonzero entries (j, d_jk) below the diagonal in column k."""
        return [(j, v) for (j, kk), v in self.d.items() if kk == k]

    def matrix(self) -> list:
        """The n x n Hessenberg matrix without its first (monomial) column.

        Row j holds d_{j,0..j-1} followed by the superdiagonal entry
        eps_j - eps_lambda (absent in the last row).
        """
        n = self.n
        top = self.eps_at(n - 1)
        rows = []
        for j in range(n):
            row = [ZERO] * (n - 1)
            for k in range(j):
                v = self.d.get((j, k))
                if v is not None:
                    row[k] = Scalar.coerce(v)
            if j < n - 1:
                row[j] = self.eps_at(j) - top
            rows.append(row)
        return rows


@dataclass
class MonomialExpansion:
    leading: tuple
    coeffs: dict

    def __getitem__(self, mu) -> Scalar:
        return self.coeffs.get(tuple(mu), ZERO)

    def items(self):
        return self.coeffs.items()

    def support(self) -> list:
        return [mu for mu, c in self.coeffs.items() if not Scalar.coerce(c).is_zero()]

    def map(self, fn: Callable[[Scalar], Scalar]) -> "MonomialExpansion":
        return MonomialExpansion(self.leading, {mu: fn(c) for mu, c in self.coeffs.items()})

    def substitute(self, bindings: Mapping) -> "MonomialExpansion":
        return self.map(lambda c: substitute(c, bindings))

    def reduced(self) -> "MonomialExpansion":
        return self.map(lambda c: reduce_ratfunc(c, full_gcd=True))

    def equals(self, other: "MonomialExpansion") -> bool:
        if self.leading != other.leading:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self[k] == other[k] for k in keys)

    def is_monic(self) -> bool:
        return self[self.leading] == 1


def _expansion(td: TriangularData, values: Iterable, full_gcd: bool) -> MonomialExpansion:
    coeffs = {}
    for mu, c in zip(td.interval, values):
        coeffs[mu] = reduce_ratfunc(c, full_gcd=True) if full_gcd else c
    return MonomialExpansion(td.leading, coeffs)


def _scaled_coefficients(td: TriangularData, gaps: list) -> list:
    """P_l = c_l * prod_{j=l}^{n-2} gap_j, computed without divisions."""
    n = td.n
    cols = [td.column(k) for k in range(n)]
    P = [ZERO] * n
    P[n - 1] = ONE
    for low in range(n - 2, -1, -1):
        total = ZERO
        for k, v in cols[low]:
            if P[k].is_zero():
                continue
            term = P[k] * v
            for j in range(low + 1, k):
                term = term * gaps[j]
            total = total + term
        P[low] = total
    return P


def hessenberg_cofactors(td: TriangularData):
    """Fraction-free form: (numerators N, E_lambda) with c_l = N_l / E_lambda.

    With polynomial eps and d every N_l is a polynomial.
    """
    n = td.n
    gaps = td.gaps()
    P = _scaled_coefficients(td, gaps)
    E = ONE
    nums = []
    prefix = ONE
    for l in range(n):
        nums.append(P[l] * prefix)
        if l < n - 1:
            prefix = prefix * gaps[l]
    for g in gaps:
        E = E * g
    return nums, E


def solve_recurrence(td: TriangularData, *, full_gcd: bool = False, fraction_free: bool = True) -> MonomialExpansion:
    """c_n = 1, c_{l-1} = (eps_lambda - eps_{l-1})^-1 sum_{k >= l} c_k d_{k,l-1}.

    The default evaluates the same recurrence without intermediate
    divisions and divides once per coefficient at the end.
    """
    n = td.n
    if n == 1:
        return MonomialExpansion(td.leading, {td.leading: ONE})
    gaps = td.gaps()
    if fraction_free:
        P = _scaled_coefficients(td, gaps)
        out = []
        suffix = ONE
        tail = [ONE] * n
        for l in range(n - 2, -1, -1):
            suffix = suffix * gaps[l]
            tail[l] = suffix
        for l in range(n):
            out.append(P[l] / tail[l] if not P[l].is_zero() else ZERO)
        return _expansion(td, out, full_gcd)
    c = [ZERO] * n
    c[n - 1] = ONE
    for low in range(n - 2, -1, -1):
        total = ZERO
        for k in range(low + 1, n):
            v = td.d.get((k, low))
            if v is not None and not c[k].is_zero():
                total = total + c[k] * v
        c[low] = total / gaps[low]
    return _expansion(td, c, full_gcd)


def solve_closed_form(td: TriangularData, *, full_gcd: bool = False) -> MonomialExpansion:
    """Sum over strictly increasing chains l = j_r < ... < j_0 = n."""
    n = td.n
    gaps = td.gaps()
    coeffs = [ZERO] * n
    coeffs[n - 1] = ONE
    by_row: dict = {}
    for (j, k), v in td.d.items():
        if not Scalar.coerce(v).is_zero():
            by_row.setdefault(j, []).append((k, Scalar.coerce(v)))

    def walk(j: int, weight: Scalar):
        for k, v in by_row.get(j, ()):
            w = weight * v / gaps[k]
            coeffs[k] = coeffs[k] + w
            walk(k, w)

    walk(n - 1, ONE)
    return _expansion(td, coeffs, full_gcd)


def _det(rows: list, cols: tuple, entry) -> Scalar:
    """Laplace expansion along the first remaining row, skipping zeros."""
    if not rows:
        return ONE
    r, rest = rows[0], rows[1:]
    total = ZERO
    for pos, c in enumerate(cols):
        v = entry(r, c)
        if v.is_zero():
            continue
        minor = _det(rest, cols[:pos] + cols[pos + 1:], entry)
        if minor.is_zero():
            continue
        term = v * minor
        total = total - term if pos % 2 else total + term
    return total


def expand_determinant(td: TriangularData, *, full_gcd: bool = False) -> MonomialExpansion:
    """First-column cofactor expansion of the Hessenberg determinant over E_lambda."""
    n = td.n
    gaps = td.gaps()
    M = td.matrix()
    E = ONE
    for g in gaps:
        E = E * g

    def entry(r, c):
        return M[r][c]

    cols = tuple(range(n - 1))
    coeffs = []
    for i in range(n):
        rows = [r for r in range(n) if r != i]
        minor = _det(rows, cols, entry)
        cof = -minor if i % 2 else minor
        coeffs.append(cof / E)
    return _expansion(td, coeffs, full_gcd)
