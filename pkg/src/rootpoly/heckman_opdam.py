"""Heckman-Opdam polynomials through the triangular-operator construction.

The hypergeometric operator acts on monomials with eigenvalues
``<mu, mu> + 2 <mu, rho_g>`` and strictly lower matrix elements d_{mu nu}.
The latter are available in two forms: closed-form tables for the classical
families (:func:`ho_matrix_element`) and the root-string sum that works for
any root data (:func:`ho_matrix_element_generic`).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact_arith import ZERO, Scalar
from .hessenberg import MonomialExpansion, TriangularData, solve_recurrence
from .roots import (
    RootSystemSpec,
    Spec,
    coroot_pairing,
    dominance_leq,
    dominant_interval,
    dominantize,
    ip2,
    positive_roots,
    root_slots,
    stabilizer_order,
)


@dataclass
class HOParams:
    """Root multiplicities per slot; missing slots stay symbolic."""

    values: dict = field(default_factory=dict)

    def get(self, slot: str) -> Scalar:
        v = self.values.get(slot)
        return Scalar.symbol(slot) if v is None else Scalar.coerce(v)

    @classmethod
    def of(cls, params) -> "HOParams":
        if isinstance(params, HOParams):
            return params
        return cls(dict(params or {}))


# ---------------------------------------------------------------------------
# eigenvalues

def ho_eigenvalue(spec: Spec, params, mu: Sequence[int]) -> Scalar:
    """<mu, mu> + 2 <mu, rho_g> with rho_g = (1/2) sum g_alpha alpha."""
    params = HOParams.of(params)
    value = Scalar(Fraction(ip2(mu, mu), 4))
    for a, slot in zip(positive_roots(spec), root_slots(spec)):
        p = ip2(mu, a)
        if p:
            value = value + params.get(slot) * Fraction(p, 4)
    return value


def ho_eigenvalue_table(spec: RootSystemSpec, params, mu: Sequence[int]) -> Scalar:
    """The per-family closed forms (used to cross-check ho_eigenvalue)."""
    params = HOParams.of(params)
    g = params.get("g")
    n = spec.rank
    vals = [Fraction(x, 2) for x in mu]
    total = ZERO
    for j, m in enumerate(vals, start=1):
        if spec.family == "A":
            term = Scalar(m) + g * (n + 1 - 2 * j)
        else:
            term = Scalar(m) + g * (2 * (n - j))
            if spec.family in ("B", "BC"):
                term = term + params.get("g_s")
            if spec.family in ("C", "BC"):
                term = term + params.get("g_l") * 2
        total = total + term * m
    return total


# ---------------------------------------------------------------------------
# classical tables (true coordinate values, Fractions)

def _eta(lam: Sequence[Fraction], m: Fraction) -> int:
    return sum(1 for x in lam if abs(x) == abs(m))


def _norm_count(nu: Sequence[Fraction], n1: Fraction, n2: Fraction) -> int:
    if abs(n1) != abs(n2):
        return _eta(nu, n1) * _eta(nu, n2)
    e = _eta(nu, n1)
    return e * (e - 1) // 2


def _sign(x) -> int:
    return -1 if x < 0 else 1


def _multiset_minus(a: Sequence, b: Sequence) -> list:
    rest = list(a)
    for x in b:
        if x in rest:
            rest.remove(x)
    return sorted(rest, reverse=True)


def _ominus(mu: Sequence[Fraction], nu: Sequence[Fraction]):
    mp = list(mu[:-1]) + [abs(mu[-1])]
    np_ = list(nu[:-1]) + [abs(nu[-1])]
    first = _multiset_minus(mp, np_)
    second = _multiset_minus(np_, mp)
    if second and _sign(mu[-1]) * _sign(nu[-1]) < 0:
        second[-1] = -second[-1]
    return first, second


def _dA1(g: Scalar, m1, m2, n1, n2) -> Scalar:
    """A_1-type building block 2 g (m1 - m2) when m1 - n1 = n2 - m2 > 0."""
    if m1 - n1 == n2 - m2 and m1 - n1 > 0:
        return g * (2 * (m1 - m2))
    return ZERO


def _dA(g, mu, nu) -> Scalar:
    first, second = _ominus(mu, nu)
    if len(first) == 2 and len(second) == 2:
        (m1, m2), (n1, n2) = first, second
        if m1 - n1 == n2 - m2 and m1 - n1 > 0:
            return g * (2 * (m1 - m2) * _norm_count(nu, n1, n2))
    return ZERO


def _dD(g, mu, nu) -> Scalar:
    first, second = _ominus(mu, nu)
    zeros = _eta(mu, Fraction(0))
    if len(first) == 2 and len(second) == 2:
        (m1, m2), (n1, n2) = first, second
        if zeros != 0 and m2 != 0:
            s = (_dA1(g, m1, m2, n1, n2) + _dA1(g, m1, -m2, n1, n2)
                 + _dA1(g, m1, m2, n1, -n2) + _dA1(g, m1, -m2, n1, -n2))
        else:
            s = _dA1(g, m1, m2, n1, n2) + _dA1(g, m1, -m2, n1, -n2)
        return s * _norm_count(nu, n1, n2)
    if len(first) == 1 and len(second) == 1:
        m, n = first[0], second[0]
        dp, dm = (m + n) / 2, (m - n) / 2
        out = _dA1(g, m, -dp, dp, -n) * _norm_count(nu, dp, n)
        if zeros != 0:
            out = out + _dA1(g, m, -dm, dm, n) * _norm_count(nu, dm, n)
        return out
    return ZERO


def _d_single(coef: Scalar, mu, nu, step) -> Scalar:
    first, second = _ominus(mu, nu)
    if len(first) == 1 and len(second) == 1:
        m, n = first[0], second[0]
        if step(m - n):
            return coef * (m * _eta(nu, n))
    return ZERO


def ho_matrix_element(spec: RootSystemSpec, params, mu: Sequence[int], nu: Sequence[int]) -> Scalar:
    """d_{mu nu} from the classical tables (doubled-coordinate weights)."""
    params = HOParams.of(params)
    fam = spec.family
    m = tuple(Fraction(x, 2) for x in mu)
    n = tuple(Fraction(x, 2) for x in nu)
    g = params.get("g")
    if fam == "A":
        return _dA(g, m, n)
    if fam == "D":
        return _dD(g, m, n)
    out = _dD(g, m, n)
    mbar = m[:-1] + (-m[-1],)
    if mbar != m:
        out = out + _dD(g, mbar, n)
    if fam in ("B", "BC"):
        out = out + _d_single(params.get("g_s") * 2, m, n, lambda k: k > 0)
    if fam in ("C", "BC"):
        out = out + _d_single(params.get("g_l") * 4, m, n, lambda k: k > 0 and k % 2 == 0)
    return out


def ho_matrix_element_generic(rootdata: Spec, params, mu: Sequence[int], nu: Sequence[int]) -> Scalar:
    """(|W_nu| / |W_mu|) sum_{alpha in [mu, nu]} g_alpha <mu, alpha> n_{mu nu}(alpha)."""
    params = HOParams.of(params)
    mu, nu = tuple(mu), tuple(nu)
    total = ZERO
    for a, slot in zip(positive_roots(rootdata), root_slots(rootdata)):
        k = coroot_pairing(mu, a)
        top = int(k // 2)
        for ell in range(1, top + 1):
            shifted = tuple(x - ell * y for x, y in zip(mu, a))
            if dominantize(rootdata, shifted).weight == nu:
                mult = 1 if 2 * ell == k else 2
                total = total + params.get(slot) * (Fraction(ip2(mu, a), 4) * mult)
                break
    if total.is_zero():
        return ZERO
    return total * Fraction(stabilizer_order(rootdata, nu), stabilizer_order(rootdata, mu))


# ---------------------------------------------------------------------------
# assembly

def ho_interval(spec: Spec, params, lam: Sequence[int], prune_cn: bool = False) -> list:
    interval = dominant_interval(spec, lam)
    if not prune_cn:
        return interval
    if not isinstance(spec, RootSystemSpec) or spec.family not in ("BC", "C"):
        raise ValueError("C-type pruning applies to the BC and C families only")
    if spec.family == "BC" and not HOParams.of(params).get("g_s").is_zero():
        raise ValueError("C-type pruning requires g_s = 0")
    cspec = RootSystemSpec("C", spec.rank)
    return [mu for mu in interval if dominance_leq(cspec, mu, tuple(lam))]


def ho_triangular_data(spec: Spec, params, lam: Sequence[int], *, prune_cn: bool = False,
                       generic: bool = False) -> TriangularData:
    params = HOParams.of(params)
    interval = ho_interval(spec, params, lam, prune_cn)
    use_generic = generic or not isinstance(spec, RootSystemSpec)
    element = ho_matrix_element_generic if use_generic else ho_matrix_element
    eps = {mu: ho_eigenvalue(spec, params, mu) for mu in interval}
    d = {}
    for j, mu in enumerate(interval):
        for k in range(j):
            v = element(spec, params, mu, interval[k])
            if not v.is_zero():
                d[(j, k)] = v
    return TriangularData(interval, eps, d)


def compute_ho(spec: Spec, params, lam: Sequence[int], prune_cn: bool = False, *,
               generic: bool = False, full_gcd: bool = False) -> MonomialExpansion:
    """Monic Heckman-Opdam polynomial p_lambda in the monomial basis."""
    td = ho_triangular_data(spec, params, lam, prune_cn=prune_cn, generic=generic)
    return solve_recurrence(td, full_gcd=full_gcd)
