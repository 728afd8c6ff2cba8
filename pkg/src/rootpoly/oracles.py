"""Independent checks: explicit operators, characters, weights, brute force.

Everything here works on finite sums of exponentials (:class:`LatticeElement`)
and enumerates the Weyl group explicitly, so it shares no code path with
the matrix-element builders it is meant to validate.
"""
from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .exact_arith import ONE, ZERO, LaurentPoly, Scalar, merge_vars, substitute
from .hessenberg import MonomialExpansion, TriangularData, hessenberg_cofactors
from .lattice import InexactDivision, LatticeElement, orbit_sum
from .macdonald import SLOT_SYMBOL, minuscule_weights
from .roots import (
    RootSystemSpec,
    ip2,
    positive_roots,
    rho,
    root_slots,
    weyl_group,
)


class NotInvariant(ValueError):
    """The input is not Weyl-group invariant."""


class NonIntegerParams(ValueError):
    """Weight functions are expanded for nonnegative integer multiplicities only."""


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _neg(a):
    return tuple(-x for x in a)


# ---------------------------------------------------------------------------
# brute-force Weyl group facts

@lru_cache(maxsize=None)
def _group(spec: RootSystemSpec) -> tuple:
    return tuple(weyl_group(spec))


def orbit_stabilizer_bruteforce(spec: RootSystemSpec, mu: Sequence[int]):
    """(orbit as a set, |stabilizer|) by enumerating W."""
    mu = tuple(mu)
    orbit = set()
    stab = 0
    for w in _group(spec):
        x = w(mu)
        orbit.add(x)
        stab += x == mu
    return orbit, stab


def _length(spec: RootSystemSpec, w) -> int:
    pos = set(positive_roots(spec))
    return sum(1 for a in pos if w(a) not in pos)


def dominantize_bruteforce(spec: RootSystemSpec, kappa: Sequence[int]):
    """(dominant weight, det of a shortest w with w(kappa) dominant, stabilized?)."""
    kappa = tuple(kappa)
    best = None
    for w in _group(spec):
        x = w(kappa)
        if _in_chamber(spec, x):
            ell = _length(spec, w)
            if best is None or ell < best[0]:
                best = (ell, x, w.det)
    _, x, sign = best
    stabilized = any(w.det == -1 and w(kappa) == kappa for w in _group(spec))
    return x, sign, stabilized


def _in_chamber(spec: RootSystemSpec, x: Sequence[int], strict: bool = False) -> bool:
    if strict:
        return all(ip2(x, a) > 0 for a in positive_roots(spec))
    return all(ip2(x, a) >= 0 for a in positive_roots(spec))


def monomial(spec: RootSystemSpec, mu: Sequence[int], coeff=1) -> LatticeElement:
    orbit, _ = orbit_stabilizer_bruteforce(spec, mu)
    return orbit_sum(orbit, coeff)


def dominant_part(spec: RootSystemSpec, f: LatticeElement) -> dict:
    """Monomial-basis coefficients of an invariant element."""
    return {k: c for k, c in f.terms.items() if _in_chamber(spec, k)}


def is_invariant(spec: RootSystemSpec, f: LatticeElement) -> bool:
    for w in _group(spec):
        if not f.map_weights(w).equals(f):
            return False
    return True


# ---------------------------------------------------------------------------
# characters

def _delta_divide(spec: RootSystemSpec, alt: LatticeElement) -> LatticeElement:
    """alt / prod_{a>0} (e^{a/2} - e^{-a/2}) = e^{-rho} alt / prod (1 - e^{-a})."""
    out = alt.shift(_neg(rho(spec)))
    for a in positive_roots(spec):
        out = out.divide_binomial(_neg(a))
    return out


@lru_cache(maxsize=None)
def _character(spec: RootSystemSpec, lam: tuple) -> LatticeElement:
    top = _vadd(lam, rho(spec))
    alt = LatticeElement(((w(top), w.det) for w in _group(spec)))
    return _delta_divide(spec, alt)


def character_element(spec: RootSystemSpec, lam: Sequence[int]) -> LatticeElement:
    """chi_lam as an exact alternant quotient (reduced families only)."""
    if not spec.reduced:
        raise ValueError("characters are taken for reduced families")
    return _character(spec, tuple(lam))


def kostka(spec: RootSystemSpec, lam: Sequence[int]) -> dict:
    """Multiplicities of dominant weights in chi_lam."""
    return dominant_part(spec, character_element(spec, lam))


def weyl_character(spec: RootSystemSpec, lam: Sequence[int]) -> MonomialExpansion:
    """chi_lam in the monomial basis (Kostka numbers)."""
    return MonomialExpansion(tuple(lam), kostka(spec, lam))


# ---------------------------------------------------------------------------
# hypergeometric operator

def apply_hypergeometric_operator(spec: RootSystemSpec, params: Mapping, f: LatticeElement) -> LatticeElement:
    """sum_nu <nu,nu> f_nu e^nu + sum_{a>0} g_a (1 + e^-a)/(1 - e^-a) d_a f."""
    def g(slot):
        v = params.get(slot)
        return Scalar.symbol(slot) if v is None else Scalar.coerce(v)

    out = LatticeElement({k: c * Fraction(ip2(k, k), 4) for k, c in f.terms.items()})
    for a, slot in zip(positive_roots(spec), root_slots(spec)):
        deriv = LatticeElement({k: c * Fraction(ip2(k, a), 4) for k, c in f.terms.items()})
        if deriv.is_zero():
            continue
        try:
            Q = deriv.divide_binomial(_neg(a))
        except InexactDivision as exc:
            raise NotInvariant(str(exc)) from None
        out = out + (Q + Q.shift(_neg(a))).scale(g(slot))
    return out


# ---------------------------------------------------------------------------
# Macdonald operator

def _stab_order(spec, pi) -> int:
    return orbit_stabilizer_bruteforce(spec, pi)[1]


def apply_macdonald_operator(spec: RootSystemSpec, choice, params: Mapping | None, f: LatticeElement, *,
                             offset: int = 0, general: bool = False, check: bool = True) -> LatticeElement:
    """Sum over pi of (prod T_a / |W_pi|) Alt(prod_a (T_a e^{a/2} - T_a^-1 e^{-a/2}) T_pi f) / delta.

    T_a = t_a^{<pi,a>/2} with one symbol t, or t, t_s, t_l when ``general``.
    T_pi multiplies e^nu by q^{<pi,nu>}, shifted by ``offset`` quarter units.
    Numeric ``params`` (q, t, ...) are substituted into the result.
    """
    if check and not is_invariant(spec, f):
        raise NotInvariant("input is not Weyl-group invariant")
    symbols = SLOT_SYMBOL if general else {"g": "t", "g_s": "t", "g_l": "t"}
    pis = minuscule_weights(spec, choice)
    roots, slots = positive_roots(spec), root_slots(spec)
    r = rho(spec)
    total = LatticeElement()
    for pi in pis:
        pi = tuple(pi)
        shifted = LatticeElement({k: Scalar.coerce(c) * Scalar.monomial({"q": (ip2(pi, k) - offset) // 2})
                                  for k, c in f.terms.items()})
        H = shifted
        pre = ONE
        for a, slot in zip(roots, slots):
            k = ip2(pi, a) // 4
            T = Scalar.monomial({symbols[slot]: k})
            half = tuple(c // 2 for c in a)
            factor = LatticeElement({half: T, _neg(half): -Scalar.monomial({symbols[slot]: -k})})
            H = H * factor
            pre = pre * T
        pre = pre * Fraction(1, _stab_order(spec, pi))
        # coefficients of the alternant at dominant regular points
        group = _group(spec)
        seen = set()
        for x in H.terms:
            dom = next(y for y in (w(x) for w in group) if _in_chamber(spec, y))
            if dom in seen or not _in_chamber(spec, dom, strict=True):
                continue
            seen.add(dom)
            coeff = ZERO
            for w in group:
                c = H.terms.get(w(dom))
                if c is not None:
                    coeff = coeff + c if w.det > 0 else coeff - c
            if not coeff.is_zero():
                total = total + character_element(spec, _vsub(dom, r)).scale(coeff * pre)
    if params:
        bindings = {k: Scalar.coerce(v) for k, v in params.items()}
        total = total.map_coeffs(lambda _, c: substitute(Scalar.coerce(c), bindings))
    return total


# ---------------------------------------------------------------------------
# eigenfunction checks

def operator_rows(spec: RootSystemSpec, interval: Sequence, apply_fn: Callable) -> dict:
    """mu -> dominant coefficients of D m_mu."""
    return {mu: dominant_part(spec, apply_fn(monomial(spec, mu))) for mu in interval}


def check_eigenfunction(spec: RootSystemSpec, td: TriangularData, apply_fn: Callable) -> bool:
    """D p == eps_lambda p with p written through its polynomial cofactors."""
    nums, _ = hessenberg_cofactors(td)
    rows = operator_rows(spec, td.interval, apply_fn)
    top = td.eps_at(td.n - 1)
    result: dict = {}
    for mu, N in zip(td.interval, nums):
        if N.is_zero():
            continue
        for nu, c in rows[mu].items():
            result[nu] = result.get(nu, ZERO) + N * c
    expected = {mu: N * top for mu, N in zip(td.interval, nums) if not N.is_zero()}
    for nu in set(result) | set(expected):
        if not (result.get(nu, ZERO) - expected.get(nu, ZERO)).is_zero():
            return False
    return True


def check_ho_matrix(spec: RootSystemSpec, td: TriangularData, params: Mapping) -> bool:
    """Entry-by-entry comparison of eps and d with the explicit operator."""
    rows = operator_rows(spec, td.interval, lambda f: apply_hypergeometric_operator(spec, params, f))
    index = {mu: i for i, mu in enumerate(td.interval)}
    for mu, row in rows.items():
        j = index[mu]
        for nu, c in row.items():
            k = index.get(nu)
            if k is None:
                return False
            want = td.eps[mu] if k == j else td.d.get((j, k), ZERO)
            if k > j or not (Scalar.coerce(c) - want).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# weight functions and the constant-term inner product

def _int_param(v) -> int:
    if isinstance(v, Scalar):
        if not v.is_rational():
            raise NonIntegerParams(f"symbolic multiplicity {v}")
        v = v.to_fraction()
    v = Fraction(v)
    if v.denominator != 1 or v < 0:
        raise NonIntegerParams(f"multiplicity {v} is not a nonnegative integer")
    return int(v)


def _all_roots(spec):
    for a, slot in zip(positive_roots(spec), root_slots(spec)):
        yield a, slot
        yield _neg(a), slot


def ho_weight(spec: RootSystemSpec, params: Mapping) -> LatticeElement:
    """prod_{a in R} (1 - e^a)^{g_a} for integer g_a."""
    dim = spec.dim
    out = LatticeElement.one(dim)
    for a, slot in _all_roots(spec):
        factor = LatticeElement({(0,) * dim: 1, a: -1})
        for _ in range(_int_param(params.get(slot, 0))):
            out = out * factor
    return out


def macdonald_weight(spec: RootSystemSpec, gvals: Mapping) -> LatticeElement:
    """prod_{a in R} prod_{0 <= m < g_a} (1 - q^m e^a), q stored as an extra coordinate."""
    dim = spec.dim
    out = LatticeElement.one(dim + 1)
    for a, slot in _all_roots(spec):
        for m in range(_int_param(gvals.get(slot, 0))):
            out = out * LatticeElement({(0,) * (dim + 1): 1, a + (m,): -1})
    return out


def weight_function_expand(spec: RootSystemSpec, kind: str, params: Mapping) -> LatticeElement:
    if kind.upper() == "HO":
        return ho_weight(spec, params)
    if kind.upper() in ("M", "MACDONALD"):
        return macdonald_weight(spec, params)
    raise ValueError(f"unknown weight kind {kind!r}")


class WeightTable:
    """Weight function as a map lattice point -> Scalar (q-graded weights folded into q powers)."""

    def __init__(self, weight: LatticeElement, dim: int):
        self.dim = dim
        grouped: dict = {}
        for k, c in weight.terms.items():
            key, m = (k, 0) if len(k) == dim else (k[:dim], k[dim])
            grouped.setdefault(key, []).append((m, c))
        self.table = {v: sum((Scalar.monomial({"q": 2 * m}, c) for m, c in terms), ZERO)
                      for v, terms in grouped.items()}

    def __call__(self, v) -> Scalar:
        return self.table.get(v, ZERO)


def weight_table(spec: RootSystemSpec, weight) -> WeightTable:
    return weight if isinstance(weight, WeightTable) else WeightTable(weight, spec.dim)


def constant_term_inner_product(spec: RootSystemSpec, f: LatticeElement, h: LatticeElement,
                                weight: LatticeElement | WeightTable) -> Scalar:
    """Constant term of f conj(h) Delta (normalized torus measure, so <1, 1>_1 = 1)."""
    lookup = weight_table(spec, weight)
    total = ZERO
    for a, ca in f.terms.items():
        for b, cb in h.terms.items():
            w = lookup(_vsub(b, a))
            if not w.is_zero():
                total = total + Scalar.coerce(ca) * Scalar.coerce(cb) * w
    return total


def _constant(poly: LaurentPoly):
    """The value of a constant Laurent polynomial, else None."""
    poly = poly.trimmed()
    return poly.terms.get((), 0) if not poly.vars else None


def _polynomial_sum(pairs: list) -> Scalar | None:
    """sum c * w over pairs of polynomial Scalars, accumulated in one dict; None if any has a nonconstant den."""
    dens = []
    for c, w in pairs:
        dc, dw = _constant(c.den), _constant(w.den)
        if dc is None or dw is None:
            return None
        dens.append(dc * dw)
    vars: tuple = ()
    for c, w in pairs:
        vars = merge_vars(merge_vars(vars, c.num.vars), w.num.vars)
    acc: dict = {}
    for (c, w), d in zip(pairs, dens):
        bt = list(w.num.lift(vars).terms.items())
        for ka, x in c.num.lift(vars).terms.items():
            for kb, y in bt:
                k = tuple(map(operator.add, ka, kb))
                v = x * y if d == 1 else Fraction(x * y) / d
                acc[k] = acc.get(k, 0) + v
    return Scalar(LaurentPoly({k: v for k, v in acc.items() if v}, vars))


def inner_product_with_monomial(spec: RootSystemSpec, f: LatticeElement, mu: Sequence[int],
                                weight: LatticeElement | WeightTable) -> Scalar:
    """<f, m_mu> for W-invariant f and weight: |W mu| sum_a f_a Delta_{mu - a}.

    Every point of the orbit W mu contributes the same amount, so one
    representative suffices.
    """
    lookup = weight_table(spec, weight)
    mu = tuple(mu)
    pairs = []
    for a, ca in f.terms.items():
        w = lookup(_vsub(mu, a))
        if not w.is_zero():
            pairs.append((Scalar.coerce(ca), w))
    total = _polynomial_sum(pairs)
    if total is None:
        total = sum((c * w for c, w in pairs), ZERO)
    return total * len(orbit_stabilizer_bruteforce(spec, mu)[0])


def orthogonal_to_monomials(spec: RootSystemSpec, f: LatticeElement, mus: Sequence,
                            weight: LatticeElement | WeightTable) -> bool:
    """<f, m_mu> == 0 for every mu in ``mus`` (f and weight W-invariant)."""
    weight = weight_table(spec, weight)
    return all(inner_product_with_monomial(spec, f, mu, weight).is_zero() for mu in mus)


def numerator_element(spec: RootSystemSpec, td: TriangularData, bindings: Mapping | None = None) -> LatticeElement:
    """E_lambda p_lambda (polynomial coefficients), optionally specialized."""
    nums, _ = hessenberg_cofactors(td)
    coeffs = dict(zip(td.interval, nums))
    if bindings:
        coeffs = {mu: substitute(c, bindings) for mu, c in coeffs.items()}
    return expansion_element(spec, coeffs)


def check_orthogonal(spec: RootSystemSpec, elements: Sequence[LatticeElement], weight: LatticeElement | WeightTable) -> bool:
    """Pairwise vanishing of the constant-term inner product."""
    weight = weight_table(spec, weight)
    for i, f in enumerate(elements):
        for h in elements[:i]:
            if not constant_term_inner_product(spec, f, h, weight).is_zero():
                return False
    return True


def expansion_element(spec: RootSystemSpec, coeffs: Mapping) -> LatticeElement:
    """sum_mu c_mu m_mu as a LatticeElement."""
    out = LatticeElement()
    for mu, c in coeffs.items():
        if not Scalar.coerce(c).is_zero():
            out = out + monomial(spec, mu, c)
    return out
