"""Macdonald polynomials via the Weyl-character second basis.

The Macdonald operator attached to a minuscule coweight pi acts on the
monomial m_mu as a triangular combination of Weyl characters.  The
matrix rows are built from the regular points of the shifted orbit
rho + W(mu): each kappa in W(mu) with rho + kappa regular contributes
det(w_{rho+kappa}) (eps_kappa - eps_lambda) to the column
nu = dom(rho + kappa) - rho.

Exponents of q and t are kept in half units.  For spin coweights of
family D and half-integral weights the natural exponents are quarter
integral; all eigenvalues of one computation are then multiplied by the
common factor q^(-1/4), which leaves the eigenfunctions unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .exact_arith import ONE, ZERO, Scalar, substitute
from .hessenberg import MonomialExpansion, TriangularData, solve_recurrence
from .roots import (
    RankGuardExceeded,
    RootSystemSpec,
    dominant_interval,
    dominantize,
    ip2,
    positive_roots,
    rho,
    root_slots,
    stabilizer_order,
    weyl_orbit,
)

GENERAL_T_GUARD = 12
SLOT_SYMBOL = {"g": "t", "g_s": "t_s", "g_l": "t_l"}


# ---------------------------------------------------------------------------
# minuscule coweights

def default_choice(spec: RootSystemSpec) -> str:
    return {"A": "omega1", "B": "omega1", "C": f"omega{spec.rank}", "D": "sum"}[spec.family]


def choices(spec: RootSystemSpec) -> list:
    n = spec.rank
    if spec.family == "A":
        return [f"omega{r}" for r in range(1, n)]
    if spec.family == "B":
        return ["omega1"]
    if spec.family == "C":
        return [f"omega{n}"]
    if spec.family == "D":
        return ["omega1", f"omega{n - 1}", f"omega{n}", "sum"]
    raise ValueError(f"family {spec.family} has no Macdonald operator here (nonreduced)")


def normalize_choice(spec: RootSystemSpec, choice: str | None) -> str:
    if choice is None:
        return default_choice(spec)
    c = str(choice).lower().replace("_", "")
    if c.isdigit():
        c = f"omega{c}"
    if c in ("omegan", "n"):
        c = f"omega{spec.rank}"
    if c not in choices(spec):
        raise ValueError(f"choice {choice!r} invalid for {spec}; expected one of {choices(spec)}")
    return c


def minuscule_weights(spec: RootSystemSpec, choice: str | None = None) -> list:
    """Coweights pi (doubled coordinates) of the chosen operator; two for D 'sum'."""
    choice = normalize_choice(spec, choice)
    n = spec.rank
    if choice == "sum":
        return minuscule_weights(spec, f"omega{n - 1}") + minuscule_weights(spec, f"omega{n}")
    r = int(choice[5:])
    if spec.family == "A":
        return [tuple(2 if j < r else 0 for j in range(n))]
    if spec.family == "B" or (spec.family == "D" and r == 1):
        return [tuple(2 if j == 0 else 0 for j in range(n))]
    if spec.family == "C" or (spec.family == "D" and r == n):
        return [(1,) * n]
    if spec.family == "D" and r == n - 1:
        return [(1,) * (n - 1) + (-1,)]
    raise ValueError(f"unsupported choice {choice}")


def q_offset(spec: RootSystemSpec, choice: str | None, lam: Sequence[int]) -> int:
    """Quarter-unit offset making all q exponents half-integral (0 or 1)."""
    return ip2(minuscule_weights(spec, choice)[0], lam) % 2


@dataclass
class MacParams:
    """Optional numeric bindings for q and t (and t_s, t_l); symbolic otherwise."""

    values: dict = field(default_factory=dict)

    @classmethod
    def of(cls, params) -> "MacParams":
        if isinstance(params, MacParams):
            return params
        return cls(dict(params or {}))

    def bindings(self) -> dict:
        return {k: Scalar.coerce(v) for k, v in self.values.items() if v is not None}


def _mono(**half_units) -> Scalar:
    return Scalar.monomial(half_units)


def _check_reduced(spec):
    if not isinstance(spec, RootSystemSpec) or spec.family not in ("A", "B", "C", "D"):
        raise ValueError("Macdonald constructions need a reduced classical family (A, B, C, D)")


# ---------------------------------------------------------------------------
# eigenvalues

def mac_eigenvalue(spec: RootSystemSpec, choice, params, mu: Sequence[int], offset: int = 0) -> Scalar:
    """t^<pi,rho> sum_{tau in W(pi)} t^<tau,rho> q^<tau,mu> (summed over pi for 'sum')."""
    _check_reduced(spec)
    r = rho(spec)
    total = ZERO
    for pi in minuscule_weights(spec, choice):
        base = ip2(pi, r) // 2
        for tau in weyl_orbit(spec, pi):
            t_exp = base + ip2(tau, r) // 2
            q_exp = ip2(tau, mu) - offset
            total = total + _mono(t=t_exp, q=q_exp // 2)
    params = MacParams.of(params)
    return substitute(total, params.bindings()) if params.values else total


# ---------------------------------------------------------------------------
# row structure

@lru_cache(maxsize=None)
def _row_structure(spec: RootSystemSpec, mu: tuple) -> dict:
    """nu -> tuple of (sign, kappa) over kappa in W(mu) with rho + kappa regular."""
    r = rho(spec)
    out: dict = {}
    for kappa in sorted(weyl_orbit(spec, mu), reverse=True):
        sw = dominantize(spec, tuple(a + b for a, b in zip(r, kappa)))
        if sw.stabilized:
            continue
        nu = tuple(a - b for a, b in zip(sw.weight, r))
        out.setdefault(nu, []).append((sw.sign, kappa))
    return {nu: tuple(v) for nu, v in out.items()}


def mac_row_structure(spec: RootSystemSpec, mu: Sequence[int]) -> dict:
    _check_reduced(spec)
    return _row_structure(spec, tuple(mu))


def inverse_kostka(spec: RootSystemSpec, lam: Sequence[int]) -> dict:
    """a_{lam nu}: coefficients of m_lam in the Weyl-character basis."""
    out = {}
    for nu, terms in mac_row_structure(spec, lam).items():
        s = sum(sign for sign, _ in terms)
        if s:
            out[nu] = s
    return out


def mac_matrix_row(spec: RootSystemSpec, choice, params, mu: Sequence[int], eps_lambda: Scalar,
                   *, offset: int = 0, eigen: Callable | None = None) -> dict:
    """Sparse row d_{mu, .} of the character-basis matrix (diagonal included)."""
    if eigen is None:
        def eigen(kappa):
            return mac_eigenvalue(spec, choice, params, kappa, offset)
    row = {}
    for nu, terms in mac_row_structure(spec, mu).items():
        v = ZERO
        for sign, kappa in terms:
            diff = eigen(kappa) - eps_lambda
            v = v + diff if sign > 0 else v - diff
        if not v.is_zero():
            row[nu] = v
    return row


def _assemble(spec, lam, eigen: Callable) -> TriangularData:
    interval = dominant_interval(spec, lam)
    index = {mu: i for i, mu in enumerate(interval)}
    eps = {mu: eigen(mu) for mu in interval}
    top = eps[tuple(lam)]
    d = {}
    labels = {}
    cache: dict = {}

    def eig(k):
        if k not in cache:
            cache[k] = eigen(k)
        return cache[k]

    for j, mu in enumerate(interval):
        for nu, terms in mac_row_structure(spec, mu).items():
            k = index.get(nu)
            if k is None or k >= j:
                continue
            v = ZERO
            for sign, kappa in terms:
                diff = eig(kappa) - top
                v = v + diff if sign > 0 else v - diff
            labels[(j, k)] = terms
            if not v.is_zero():
                d[(j, k)] = v
    return TriangularData(interval, eps, d, labels=labels)


def mac_triangular_data(spec: RootSystemSpec, choice, params, lam: Sequence[int]) -> TriangularData:
    _check_reduced(spec)
    lam = tuple(lam)
    off = q_offset(spec, choice, lam)
    td = _assemble(spec, lam, lambda k: mac_eigenvalue(spec, choice, {}, k, off))
    params = MacParams.of(params)
    if params.values:
        td = substitute_data(td, params.bindings())
    return td


def substitute_data(td: TriangularData, bindings: dict) -> TriangularData:
    """Specialize symbolic TriangularData (numeric values after assembly)."""
    eps = {k: substitute(v, bindings) for k, v in td.eps.items()}
    d = {k: substitute(v, bindings) for k, v in td.d.items()}
    d = {k: v for k, v in d.items() if not v.is_zero()}
    a = None if td.a is None else {k: substitute(v, bindings) for k, v in td.a.items()}
    return TriangularData(td.interval, eps, d, a, dict(td.labels))


def compute_macdonald(spec: RootSystemSpec, choice=None, params=None, lam: Sequence[int] = (), *,
                      full_gcd: bool = False) -> MonomialExpansion:
    """Monic Macdonald polynomial (t_alpha = t) in the monomial basis."""
    td = mac_triangular_data(spec, choice, params, lam)
    return solve_recurrence(td, full_gcd=full_gcd)


def ho_via_macdonald(spec: RootSystemSpec, g, lam: Sequence[int], *, full_gcd: bool = False) -> MonomialExpansion:
    """Heckman-Opdam polynomial (equal multiplicities g) from the character-basis matrix."""
    _check_reduced(spec)
    g = Scalar.symbol("g") if g is None else Scalar.coerce(g)
    r = rho(spec)

    def eigen(kappa):
        # <kappa + g rho, kappa + g rho>
        return (Scalar(Fraction(ip2(kappa, kappa), 4)) + g * Fraction(ip2(kappa, r), 2)
                + g * g * Fraction(ip2(r, r), 4))

    td = _assemble(spec, tuple(lam), eigen)
    return solve_recurrence(td, full_gcd=full_gcd)


# ---------------------------------------------------------------------------
# general t_alpha = q^{g_alpha}

def general_symbols(spec: RootSystemSpec) -> dict:
    return {slot: SLOT_SYMBOL[slot] for slot in spec.parameter_slots}


@lru_cache(maxsize=None)
def _half_product(spec: RootSystemSpec, pi: tuple) -> tuple:
    """prod_{alpha>0} (T_a e^{a/2} - T_a^{-1} e^{-a/2}) as ((shift, coeff), ...)."""
    roots = positive_roots(spec)
    if len(roots) > GENERAL_T_GUARD:
        raise RankGuardExceeded(f"{len(roots)} positive roots exceed the guard of {GENERAL_T_GUARD}")
    acc = {(0,) * spec.rank: ONE}
    for a, slot in zip(roots, root_slots(spec)):
        sym = SLOT_SYMBOL[slot]
        k = ip2(pi, a) // 4  # <pi, alpha> in {0, 1}
        T = _mono(**{sym: k})
        Tinv = _mono(**{sym: -k})
        half = tuple(c // 2 for c in a)
        nxt: dict = {}
        for s, c in acc.items():
            up = tuple(x + y for x, y in zip(s, half))
            dn = tuple(x - y for x, y in zip(s, half))
            nxt[up] = nxt.get(up, ZERO) + c * T
            nxt[dn] = nxt.get(dn, ZERO) - c * Tinv
        acc = {s: c for s, c in nxt.items() if not c.is_zero()}
    return tuple(acc.items())


def _prefactor(spec: RootSystemSpec, pi: tuple) -> Scalar:
    """q^{<pi, rho_g>} = prod_alpha t_alpha^{<pi, alpha>/2}."""
    exps: dict = {}
    for a, slot in zip(positive_roots(spec), root_slots(spec)):
        sym = SLOT_SYMBOL[slot]
        exps[sym] = exps.get(sym, 0) + ip2(pi, a) // 4
    return Scalar.monomial(exps)


def general_eigenvalue(spec: RootSystemSpec, choice, mu: Sequence[int], offset: int = 0) -> Scalar:
    """q^<pi,rho_g> sum_tau q^<tau, mu + rho_g> with t_alpha = q^{g_alpha} as symbols."""
    _check_reduced(spec)
    total = ZERO
    roots, slots = positive_roots(spec), root_slots(spec)
    for pi in minuscule_weights(spec, choice):
        pre = _prefactor(spec, pi)
        for tau in weyl_orbit(spec, pi):
            exps: dict = {"q": (ip2(tau, mu) - offset) // 2}
            for a, slot in zip(roots, slots):
                sym = SLOT_SYMBOL[slot]
                # t_alpha^{<tau, alpha>/2}; <tau, alpha> = ip2/4, half units -> ip2/4
                exps[sym] = exps.get(sym, 0) + ip2(tau, a) // 4
            total = total + pre * Scalar.monomial(exps)
    return total


def general_b_row(spec: RootSystemSpec, choice, mu: Sequence[int], offset: int = 0) -> dict:
    """b_{mu, .} for general t_alpha, in the Weyl-character basis."""
    r = rho(spec)
    out: dict = {}
    for pi in minuscule_weights(spec, choice):
        P = _half_product(spec, pi)
        pre = _prefactor(spec, pi) * Fraction(1, stabilizer_order(spec, pi))
        for kappa in weyl_orbit(spec, tuple(mu)):
            qk = Scalar.monomial({"q": (ip2(pi, kappa) - offset) // 2})
            for s, c in P:
                x = tuple(a + b for a, b in zip(kappa, s))
                sw = dominantize(spec, x)
                if sw.stabilized:
                    continue
                nu = tuple(a - b for a, b in zip(sw.weight, r))
                term = c * qk * pre
                out[nu] = out.get(nu, ZERO) + (term if sw.sign > 0 else -term)
    return {nu: v for nu, v in out.items() if not v.is_zero()}


def general_t_triangular_data(spec: RootSystemSpec, params, lam: Sequence[int], choice=None) -> TriangularData:
    _check_reduced(spec)
    lam = tuple(lam)
    off = q_offset(spec, choice, lam)
    interval = dominant_interval(spec, lam)
    index = {mu: i for i, mu in enumerate(interval)}
    eps = {mu: general_eigenvalue(spec, choice, mu, off) for mu in interval}
    top = eps[lam]
    d = {}
    for j, mu in enumerate(interval):
        b = general_b_row(spec, choice, mu, off)
        a = inverse_kostka(spec, mu)
        for nu in set(b) | set(a):
            k = index.get(nu)
            if k is None or k >= j:
                continue
            v = b.get(nu, ZERO) - top * a.get(nu, 0)
            if not v.is_zero():
                d[(j, k)] = v
    td = TriangularData(interval, eps, d)
    params = MacParams.of(params)
    if params.values:
        td = substitute_data(td, params.bindings())
    return td


def compute_macdonald_general_t(spec: RootSystemSpec, params=None, lam: Sequence[int] = (), *,
                                choice=None, full_gcd: bool = False) -> MonomialExpansion:
    """Monic Macdonald polynomial with per-slot t_alpha (symbols t, t_s, t_l)."""
    td = general_t_triangular_data(spec, params, lam, choice)
    return solve_recurrence(td, full_gcd=full_gcd)
