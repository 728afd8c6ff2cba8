"""Exact coefficient arithmetic.

Two layers live here:

* :class:`LaurentPoly` -- sparse Laurent polynomials with rational
  coefficients.  Exponents are stored in *half units*, so ``q^(1/2)`` has
  exponent ``1`` and ``q`` has exponent ``2``.
* :class:`Scalar` -- an exact field element, i.e. a ratio of two Laurent
  polynomials kept in a canonical form (monomial content and integer
  content removed, positive leading coefficient in the denominator).  A
  plain rational number is a ``Scalar`` whose numerator and denominator are
  constants.

Full multivariate GCD cancellation is optional (``reduce_ratfunc(...,
full_gcd=True)``) and is delegated to sympy's sparse polynomial rings.
"""
from __future__ import annotations

import math
import operator
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

KNOWN_SYMBOLS = ("q", "t", "t_s", "t_l", "g", "g_s", "g_l")


class DivisionByZero(ZeroDivisionError):
    pass


class ParameterDegeneracy(ArithmeticError):
    """A substitution sends a denominator to zero."""


def _var_key(name: str):
    if name in KNOWN_SYMBOLS:
        return (KNOWN_SYMBOLS.index(name), "")
    return (len(KNOWN_SYMBOLS), name)


def merge_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(set(a) | set(b), key=_var_key))


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _add_exps(a: tuple, b: tuple) -> tuple:
    return tuple(map(operator.add, a, b))


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, terms: Mapping | None = None, vars: tuple = ()):
        self.vars = tuple(vars)
        self.terms = {} if terms is None else {k: _norm(v) for k, v in terms.items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, vars: tuple) -> "LaurentPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls._raw({(): c} if c != 0 else {}, ())

    @classmethod
    def symbol(cls, name: str, half_units: int = 2) -> "LaurentPoly":
        return cls._raw({(half_units,): 1}, (name,))

    @classmethod
    def monomial(cls, vars: tuple, exps: tuple, coeff=1) -> "LaurentPoly":
        if coeff == 0:
            return cls._raw({}, ())
        return cls._raw({tuple(exps): _norm(coeff)}, tuple(vars))

    # -- structure -------------------------------------------------------
    def lift(self, vars: tuple) -> "LaurentPoly":
        if vars == self.vars:
            return self
        idx = [self.vars.index(v) if v in self.vars else -1 for v in vars]
        if any(v not in vars for v in self.vars):
            raise ValueError(f"cannot lift {self.vars} into {vars}")
        new = {}
        for k, c in self.terms.items():
            new[tuple(k[i] if i >= 0 else 0 for i in idx)] = c
        return LaurentPoly._raw(new, vars)

    def trimmed(self) -> "LaurentPoly":
        """Drop variables that occur with exponent zero everywhere."""
        if not self.vars:
            return self
        used = [i for i in range(len(self.vars)) if any(k[i] for k in self.terms)]
        if len(used) == len(self.vars):
            return self
        vars = tuple(self.vars[i] for i in used)
        return LaurentPoly._raw({tuple(k[i] for i in used): c for k, c in self.terms.items()}, vars)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    def coeff(self, exps: tuple):
        return self.terms.get(tuple(exps), 0)

    def min_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms)) if self.vars else ()

    def max_exponents(self) -> tuple:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(max(col) for col in zip(*self.terms)) if self.vars else ()

    def leading_term(self):
        """Leading (exponent, coefficient) under graded-lex order."""
        k = max(self.terms, key=lambda e: (sum(e), e))
        return k, self.terms[k]

    def shift(self, exps: tuple) -> "LaurentPoly":
        if not any(exps):
            return self
        return LaurentPoly._raw({_add_exps(k, exps): c for k, c in self.terms.items()}, self.vars)

    def scale(self, c) -> "LaurentPoly":
        c = _norm(c)
        if c == 0:
            return LaurentPoly._raw({}, self.vars)
        if c == 1:
            return self
        return LaurentPoly._raw({k: _norm(v * c) for k, v in self.terms.items()}, self.vars)

    def coefficients(self) -> Iterable:
        return self.terms.values()

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.constant(x)
        return NotImplemented

    def _aligned(self, other: "LaurentPoly"):
        if self.vars == other.vars:
            return self, other, self.vars
        vars = merge_vars(self.vars, other.vars)
        return self.lift(vars), other.lift(vars), vars

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        a, b, vars = self._aligned(other)
        out = dict(a.terms)
        for k, c in b.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = _norm(v + c)
                if v == 0:
                    del out[k]
                else:
                    out[k] = v
        return LaurentPoly._raw(out, vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPoly._raw({}, merge_vars(self.vars, other.vars))
        a, b, vars = self._aligned(other)
        if len(a.terms) > len(b.terms):
            a, b = b, a
        if not vars:
            return LaurentPoly._raw({(): _norm(a.terms[()] * b.terms[()])}, vars)
        out: dict = {}
        get = out.get
        bt = list(b.terms.items())
        for ka, ca in a.terms.items():
            for kb, cb in bt:
                k = tuple(map(operator.add, ka, kb))
                v = get(k)
                out[k] = ca * cb if v is None else v + ca * cb
        return LaurentPoly._raw({k: _norm(v) for k, v in out.items() if v != 0}, vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (k, c), = self.terms.items()
            return LaurentPoly._raw({tuple(n * e for e in k): _norm(Fraction(c) ** n)}, self.vars)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.vars == other.vars:
            return self.terms == other.terms
        return self.trimmed()._eq_trimmed(other.trimmed())

    def _eq_trimmed(self, other):
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            t = self.trimmed()
            self._hash = hash((t.vars, frozenset(t.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _int_content(poly: LaurentPoly):
    """(lcm of coefficient denominators, gcd of scaled integer coefficients)."""
    den = 1
    for c in poly.terms.values():
        if type(c) is Fraction:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return den


class Scalar:
    """Exact field element: a canonical ratio of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, value=0, den=None):
        if isinstance(value, Scalar) and den is None:
            self.num, self.den = value.num, value.den
            return
        if isinstance(value, str):
            s = parse_scalar(value)
            if den is not None:
                s = s / Scalar(den)
            self.num, self.den = s.num, s.den
            return
        num = value if isinstance(value, LaurentPoly) else LaurentPoly.constant(value)
        if den is None:
            d = _ONE_POLY
        elif isinstance(den, LaurentPoly):
            d = den
        else:
            d = LaurentPoly.constant(den)
        self.num, self.den = _canonical(num, d)

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        return s

    @classmethod
    def symbol(cls, name: str) -> "Scalar":
        return cls._raw(LaurentPoly.symbol(name), _ONE_POLY)

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff=1) -> "Scalar":
        """Monomial from a map symbol -> exponent in half units."""
        items = sorted(((v, e) for v, e in exps.items() if e), key=lambda ve: _var_key(ve[0]))
        vars = tuple(v for v, _ in items)
        return cls._raw(LaurentPoly.monomial(vars, tuple(e for _, e in items), coeff), _ONE_POLY)

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar._raw(LaurentPoly.constant(x), _ONE_POLY)
        if isinstance(x, LaurentPoly):
            return Scalar._raw(x.trimmed(), _ONE_POLY)
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def is_rational(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational number")
        return Fraction(self.num.constant_value()) / Fraction(self.den.constant_value())

    @property
    def variables(self) -> tuple:
        return merge_vars(self.num.vars, self.den.vars)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num.terms or not other.num.terms:
            return ZERO
        if self.den.is_constant() and other.den.is_constant():
            num = self.num * other.num
            if num.is_constant() or (self.den == 1 and other.den == 1):
                return _make(num, _ONE_POLY) if not num.is_constant() else Scalar._raw(num, _ONE_POLY)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise DivisionByZero("division by the zero Scalar")
        return _make(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero Scalar")
        return _make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.den == 1:
            return Scalar._raw(self.num ** n, _ONE_POLY)
        return _make(self.num ** n, self.den ** n)

    def equals(self, other) -> bool:
        other = Scalar.coerce(other)
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __eq__(self, other):
        try:
            return self.equals(other)
        except TypeError:
            return NotImplemented

    __hash__ = None  # value equality is decided by cross-multiplication

    def same_form(self, other: "Scalar") -> bool:
        """Bit-for-bit identity of the stored canonical form."""
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_ONE_POLY = LaurentPoly.constant(1)


def _canonical(num: LaurentPoly, den: LaurentPoly):
    if not den.terms:
        raise DivisionByZero("zero denominator")
    if not num.terms:
        return LaurentPoly._raw({}, ()), _ONE_POLY
    if num.vars != den.vars:
        vars = merge_vars(num.vars, den.vars)
        num, den = num.lift(vars), den.lift(vars)
    mins = den.min_exponents()
    if any(mins):
        neg = tuple(-m for m in mins)
        num, den = num.shift(neg), den.shift(neg)
    if den.is_constant():
        c = den.constant_value()
        if c != 1:
            num = num.scale(Fraction(1) / Fraction(c))
        return num.trimmed(), _ONE_POLY
    scale = _int_content(num)
    dscale = _int_content(den)
    scale = scale * dscale // math.gcd(scale, dscale)
    if scale != 1:
        num, den = num.scale(scale), den.scale(scale)
    g = 0
    for c in num.terms.values():
        g = math.gcd(g, c)
    for c in den.terms.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    _, lead = den.leading_term()
    if lead < 0:
        g = -g
    if g != 1:
        num = LaurentPoly._raw({k: c // g for k, c in num.terms.items()}, num.vars)
        den = LaurentPoly._raw({k: c // g for k, c in den.terms.items()}, den.vars)
    vars = num.vars
    used = [i for i in range(len(vars)) if any(k[i] for k in num.terms) or any(k[i] for k in den.terms)]
    if len(used) != len(vars):
        nv = tuple(vars[i] for i in used)
        num = LaurentPoly._raw({tuple(k[i] for i in used): c for k, c in num.terms.items()}, nv)
        den = LaurentPoly._raw({tuple(k[i] for i in used): c for k, c in den.terms.items()}, nv)
    return num, den


def _make(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    n, d = _canonical(num, den)
    return Scalar._raw(n, d)


ZERO = Scalar._raw(LaurentPoly._raw({}, ()), _ONE_POLY)
ONE = Scalar._raw(_ONE_POLY, _ONE_POLY)


# ---------------------------------------------------------------------------
# full GCD reduction (backed by sympy's sparse polynomial rings)

@lru_cache(maxsize=None)
def _zz_ring(nvars: int):
    from sympy.polys.domains import ZZ
    from sympy.polys.rings import ring

    names = ",".join(f"x{i}" for i in range(nvars))
    return ring(names, ZZ)[0]


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """GCD of two polynomials with integer coefficients and exponents >= 0."""
    a, b, vars = a._aligned(b)
    if not vars:
        return _ONE_POLY
    R = _zz_ring(len(vars))
    g = R.from_dict(dict(a.terms)).gcd(R.from_dict(dict(b.terms)))
    return LaurentPoly._raw({tuple(k): int(c) for k, c in g.items()}, vars)


def poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact quotient a / b of Laurent polynomials; raises ValueError if inexact."""
    if b.is_zero():
        raise DivisionByZero("exact division by zero polynomial")
    if a.is_zero():
        return a
    a, b, vars = a._aligned(b)
    if b.is_monomial():
        (k, c), = b.terms.items()
        return a.shift(tuple(-e for e in k)).scale(Fraction(1) / Fraction(c))
    amin, bmin = a.min_exponents(), b.min_exponents()
    a0 = a.shift(tuple(-e for e in amin))
    b0 = b.shift(tuple(-e for e in bmin))
    from sympy.polys.domains import QQ
    from sympy.polys.polyerrors import ExactQuotientFailed
    from sympy.polys.rings import ring

    R = ring(",".join(f"x{i}" for i in range(len(vars))), QQ)[0]
    pa = R.from_dict({k: QQ(c.numerator, c.denominator) if type(c) is Fraction else QQ(c) for k, c in a0.terms.items()})
    pb = R.from_dict({k: QQ(c.numerator, c.denominator) if type(c) is Fraction else QQ(c) for k, c in b0.terms.items()})
    try:
        qt = pa.exquo(pb)
    except ExactQuotientFailed as exc:
        raise ValueError("inexact polynomial division") from exc
    out = {tuple(k): _norm(Fraction(int(c.numerator), int(c.denominator))) for k, c in qt.items()}
    shift = tuple(x - y for x, y in zip(amin, bmin))
    return LaurentPoly._raw(out, vars).shift(shift)


def reduce_ratfunc(r: Scalar, full_gcd: bool = False) -> Scalar:
    """Canonical form of ``r``; with ``full_gcd`` also cancel the polynomial GCD."""
    r = Scalar.coerce(r)
    num, den = _canonical(r.num, r.den)
    if not full_gcd or den.is_constant() or num.is_zero():
        return Scalar._raw(num, den)
    num, den, _ = num._aligned(den)
    nmin = num.min_exponents()
    if any(m < 0 for m in nmin):
        lift = tuple(-min(m, 0) for m in nmin)
        num, den = num.shift(lift), den.shift(lift)
    g = poly_gcd(num, den)
    if g.is_constant():
        return Scalar._raw(*_canonical(num, den))
    return _make(poly_exact_div(num, g), poly_exact_div(den, g))


# ---------------------------------------------------------------------------
# substitution

def _sqrt_scalar(s: Scalar) -> Scalar:
    if s.den == 1 and s.num.is_monomial():
        (k, c), = s.num.terms.items()
        if all(e % 2 == 0 for e in k):
            c = Fraction(c)
            rn, rd = math.isqrt(c.numerator) if c.numerator >= 0 else -1, math.isqrt(c.denominator)
            if rn >= 0 and rn * rn == c.numerator and rd * rd == c.denominator:
                return Scalar._raw(LaurentPoly.monomial(s.num.vars, tuple(e // 2 for e in k), Fraction(rn, rd)), _ONE_POLY)
    raise ValueError(f"half-integer power needs a perfect-square binding, got {s}")


def _eval_poly(p: LaurentPoly, bindings: Mapping[str, Scalar], cache: dict) -> Scalar:
    total = ZERO
    for k, c in p.terms.items():
        term = Scalar.coerce(c)
        free_exps = {}
        for v, e in zip(p.vars, k):
            if not e:
                continue
            if v not in bindings:
                free_exps[v] = e
                continue
            key = (v, e)
            val = cache.get(key)
            if val is None:
                base = bindings[v]
                if e % 2:
                    base = _sqrt_scalar(base)
                    n = e
                else:
                    n = e // 2
                if n < 0 and base.is_zero():
                    raise ParameterDegeneracy(f"{v} bound to 0 under a negative power")
                val = base ** n
                cache[key] = val
            term = term * val
        if free_exps:
            term = term * Scalar.monomial(free_exps)
        total = total + term
    return total


def substitute(s, bindings: Mapping[str, object]) -> Scalar:
    """Exact substitution of symbols by Scalars (``t -> q``, ``g -> 1``, ...)."""
    s = Scalar.coerce(s)
    b = {k: Scalar.coerce(v) for k, v in bindings.items()}
    cache: dict = {}
    num = _eval_poly(s.num, b, cache)
    den = _eval_poly(s.den, b, cache)
    if den.is_zero():
        raise ParameterDegeneracy(f"denominator of {s} vanishes under {bindings}")
    return num / den


# ---------------------------------------------------------------------------
# text rendering and parsing

def _format_exp(name: str, e: int) -> str:
    if e == 2:
        return name
    if e % 2 == 0:
        k = e // 2
        return f"{name}^{k}" if k > 0 else f"{name}^({k})"
    return f"{name}^({e}/2)"


def _format_coeff(c) -> str:
    return str(c)


def _term_order(k: tuple):
    return (sum(k), tuple(-e for e in k))


def format_poly(p: LaurentPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for k in sorted(p.terms, key=_term_order):
        c = p.terms[k]
        mono = "*".join(_format_exp(v, e) for v, e in zip(p.vars, k) if e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def format_scalar(s: Scalar) -> str:
    if s.den == 1:
        return format_poly(s.num)
    return f"({format_poly(s.num)})/({format_poly(s.den)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Scalar:
        val = self.expr()
        if self.i != len(self.toks):
            raise ValueError(f"trailing input in {self.text!r}")
        return val

    def expr(self) -> Scalar:
        sign = 1
        while self.peek() in (("op", "-"), ("op", "+")):
            if self.take()[1] == "-":
                sign = -sign
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_factor(self):
        kind, v = self.peek()
        return kind in ("num", "name") or (kind, v) == ("op", "(")

    def term(self) -> Scalar:
        val = self.power()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                val = val * self.power()
            elif tok == ("op", "/"):
                self.take()
                val = val / self.power()
            elif self._starts_factor():
                val = val * self.power()
            else:
                return val

    def exponent(self) -> Fraction:
        tok = self.peek()
        if tok == ("op", "("):
            self.take()
            sign = 1
            while self.peek() in (("op", "-"), ("op", "+")):
                if self.take()[1] == "-":
                    sign = -sign
            kind, n = self.take()
            if kind != "num":
                raise ValueError(f"bad exponent in {self.text!r}")
            e = Fraction(n)
            if self.peek() == ("op", "/"):
                self.take()
                kind, d = self.take()
                e = e / d
            self.take(")")
            return sign * e
        if tok == ("op", "-"):
            self.take()
            return -self.exponent()
        kind, n = self.take()
        if kind != "num":
            raise ValueError(f"bad exponent in {self.text!r}")
        return Fraction(n)

    def power(self) -> Scalar:
        kind, v = self.peek()
        if (kind, v) == ("op", "-"):
            self.take()
            return -self.power()
        if kind == "num":
            self.take()
            base = Scalar.coerce(v)
            name = None
        elif kind == "name":
            self.take()
            base = Scalar.symbol(v)
            name = v
        elif (kind, v) == ("op", "("):
            self.take()
            base = self.expr()
            self.take(")")
            name = None
        else:
            raise ValueError(f"unexpected token {v!r} in {self.text!r}")
        if self.peek() in (("op", "^"),) or self.peek() == ("op", "*") and self._double_star():
            if self.peek() == ("op", "*"):
                self.take()
            self.take()
            e = self.exponent()
            if e.denominator == 1:
                return base ** int(e)
            if e.denominator != 2:
                raise ValueError(f"only half-integer exponents are supported: {self.text!r}")
            if name is not None:
                return Scalar.monomial({name: int(2 * e)})
            return _sqrt_scalar(base) ** int(2 * e)
        return base

    def _double_star(self):
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None
        return nxt == ("op", "*")


def parse_scalar(text: str) -> Scalar:
    """Parse the textual Scalar grammar (``(1 + q)/(1 - q*t)``, ``q^(1/2)``...)."""
    return _Parser(text).parse()
