"""Finite sums of formal exponentials e^v over the (doubled) weight lattice."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .exact_arith import Scalar


class InexactDivision(ArithmeticError):
    pass


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, Scalar) else c == 0


def _add_vec(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class LatticeElement:
    """Map weight -> coefficient (int, Fraction or Scalar) without zero entries."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        out = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k = tuple(k)
                out[k] = out[k] + c if k in out else c
        self.terms = {k: c for k, c in out.items() if not _is_zero(c)}

    @classmethod
    def _raw(cls, terms: dict) -> "LatticeElement":
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff=1) -> "LatticeElement":
        return cls({tuple(weight): coeff})

    @classmethod
    def one(cls, dim: int) -> "LatticeElement":
        return cls({(0,) * dim: 1})

    # -- basic queries ---------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, weight: Sequence[int]):
        return self.terms.get(tuple(weight), 0)

    def constant_term(self, dim: int):
        return self.terms.get((0,) * dim, 0)

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other: "LatticeElement") -> "LatticeElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                v = out[k] + c
                if _is_zero(v):
                    del out[k]
                else:
                    out[k] = v
            else:
                out[k] = c
        return LatticeElement._raw(out)

    def __neg__(self) -> "LatticeElement":
        return LatticeElement._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LatticeElement") -> "LatticeElement":
        return self + (-other)

    def scale(self, c) -> "LatticeElement":
        if _is_zero(c):
            return LatticeElement._raw({})
        return LatticeElement({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, LatticeElement):
            return self.scale(other)
        acc: dict = defaultdict(int)
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                acc[_add_vec(ka, kb)] += ca * cb
        return LatticeElement(acc)

    __rmul__ = scale

    def shift(self, v: Sequence[int]) -> "LatticeElement":
        v = tuple(v)
        return LatticeElement._raw({_add_vec(k, v): c for k, c in self.terms.items()})

    def map_weights(self, fn: Callable[[tuple], tuple]) -> "LatticeElement":
        return LatticeElement(((fn(k), c) for k, c in self.terms.items()))

    def map_coeffs(self, fn: Callable) -> "LatticeElement":
        return LatticeElement({k: fn(k, c) for k, c in self.terms.items()})

    def conj(self) -> "LatticeElement":
        """Torus conjugation: e^v -> e^{-v}."""
        return LatticeElement._raw({tuple(-x for x in k): c for k, c in self.terms.items()})

    def equals(self, other: "LatticeElement") -> bool:
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a, b = self.terms.get(k, 0), other.terms.get(k, 0)
            d = a - b
            if not _is_zero(d):
                return False
        return True

    # -- exact division --------------------------------------------------
    def divide_binomial(self, gamma: Sequence[int]) -> "LatticeElement":
        """Exact quotient by (1 - e^gamma); raises InexactDivision otherwise.

        Q (1 - e^gamma) = L means Q_v - Q_{v - gamma} = L_v, so along each
        gamma-string Q is the running sum of L and every string must sum to 0.
        """
        gamma = tuple(gamma)
        i = next(j for j, c in enumerate(gamma) if c)
        strings: dict = defaultdict(list)
        for v, c in self.terms.items():
            pos = v[i] // gamma[i]
            base = tuple(x - pos * y for x, y in zip(v, gamma))
            strings[base].append((pos, c))
        out = {}
        for base, entries in strings.items():
            entries.sort(key=lambda e: e[0])
            run = 0
            prev = None
            for pos, c in entries:
                if prev is not None and not _is_zero(run):
                    for p in range(prev, pos):
                        out[tuple(x + p * y for x, y in zip(base, gamma))] = run
                run = run + c
                prev = pos
            if not _is_zero(run):
                raise InexactDivision(f"not divisible by (1 - e^{gamma})")
        return LatticeElement(out)

    def __repr__(self):
        inner = ", ".join(f"{k}: {c}" for k, c in sorted(self.terms.items()))
        return f"LatticeElement({{{inner}}})"


def orbit_sum(weights: Iterable[Sequence[int]], coeff=1) -> LatticeElement:
    return LatticeElement({tuple(w): coeff for w in weights})


def as_fraction(c) -> Fraction:
    if isinstance(c, Scalar):
        return c.to_fraction()
    return Fraction(c)
