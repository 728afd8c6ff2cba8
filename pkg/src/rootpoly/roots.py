"""Classical root data.

Weights are plain tuples of *doubled* integers: the weight (3/2, 1/2) is
stored as ``(3, 1)``.  This keeps half-integral spin weights and the half
sum of positive roots integral.  Every function takes either a
:class:`RootSystemSpec` (families A, B, C, D, BC) or a :class:`RootData`
built from an explicit list of positive roots.

For family A the spec stores ``rank = N``, the number of coordinates, so
weights are partitions with N parts and the root system is A_{N-1}.
"""
from __future__ import annotations

import itertools
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

FAMILIES = ("A", "B", "C", "D", "BC")
SLOTS = {
    "A": ("g",),
    "B": ("g", "g_s"),
    "C": ("g", "g_l"),
    "D": ("g",),
    "BC": ("g", "g_s", "g_l"),
}
BRUTE_FORCE_RANK = 5

Weight = tuple


class ArityMismatch(ValueError):
    pass


class RankGuardExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        if fam not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if self.rank < 1 or (fam == "D" and self.rank < 2):
            raise ValueError(f"rank {self.rank} invalid for family {fam}")

    @property
    def parameter_slots(self) -> tuple:
        return SLOTS[self.family]

    @property
    def dim(self) -> int:
        return self.rank

    @property
    def reduced(self) -> bool:
        return self.family != "BC"

    def __str__(self):
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class RootData:
    """Explicit root data: positive roots (doubled coordinates) with slot names."""

    dim: int
    positive_roots: tuple
    slots: tuple
    name: str = "custom"
    family: str = field(default="custom")

    @property
    def parameter_slots(self) -> tuple:
        return tuple(dict.fromkeys(self.slots))

    @property
    def reduced(self) -> bool:
        roots = set(self.positive_roots)
        return not any(tuple(2 * c for c in a) in roots for a in roots)

    @property
    def rank(self) -> int:
        return self.dim


@dataclass(frozen=True)
class SignedWeight:
    weight: tuple
    sign: int
    stabilized: bool = False


Spec = Union[RootSystemSpec, RootData]


# ---------------------------------------------------------------------------
# weights

def parse_weight(text: str) -> tuple:
    """``"3/2,1/2,1/2"`` -> ``(3, 1, 1)`` (doubled coordinates)."""
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        v = Fraction(part) * 2
        if v.denominator != 1:
            raise ValueError(f"coordinate {part} is not a multiple of 1/2")
        out.append(int(v))
    return tuple(out)


def weight_from_values(values: Iterable) -> tuple:
    out = []
    for v in values:
        d = Fraction(v) * 2
        if d.denominator != 1:
            raise ValueError(f"coordinate {v} is not a multiple of 1/2")
        out.append(int(d))
    return tuple(out)


def _half(x: int) -> str:
    return str(x // 2) if x % 2 == 0 else f"{x}/2"


def format_weight(w: Sequence[int], sep: str = ",") -> str:
    return sep.join(_half(x) for x in w)


def weight_values(w: Sequence[int]) -> tuple:
    return tuple(Fraction(x, 2) for x in w)


def ip2(x: Sequence[int], y: Sequence[int]) -> int:
    """Inner product of two doubled vectors (4 times the true value)."""
    return sum(a * b for a, b in zip(x, y))


def inner(x: Sequence[int], y: Sequence[int]) -> Fraction:
    """True inner product of two weights given in doubled coordinates."""
    return Fraction(ip2(x, y), 4)


def coroot_pairing(x: Sequence[int], alpha: Sequence[int]) -> Fraction:
    """<x, alpha^vee> = 2 (x, alpha) / (alpha, alpha)."""
    return Fraction(2 * ip2(x, alpha), ip2(alpha, alpha))


def _check_arity(spec: Spec, *ws):
    for w in ws:
        if len(w) != spec.dim:
            raise ArityMismatch(f"weight {w} has arity {len(w)}, expected {spec.dim}")


# ---------------------------------------------------------------------------
# roots

def _unit(n: int, i: int, c: int = 2) -> list:
    v = [0] * n
    v[i] = c
    return v


@lru_cache(maxsize=None)
def _classical_roots(family: str, n: int) -> tuple:
    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            v = _unit(n, i)
            v[j] = -2
            roots.append((tuple(v), "g"))
            if family != "A":
                w = _unit(n, i)
                w[j] = 2
                roots.append((tuple(w), "g"))
    if family in ("B", "BC"):
        roots += [(tuple(_unit(n, i, 2)), "g_s") for i in range(n)]
    if family in ("C", "BC"):
        roots += [(tuple(_unit(n, i, 4)), "g_l") for i in range(n)]
    return tuple(roots)


def positive_roots(spec: Spec) -> tuple:
    if isinstance(spec, RootData):
        return spec.positive_roots
    return tuple(r for r, _ in _classical_roots(spec.family, spec.rank))


def root_slots(spec: Spec) -> tuple:
    """Slot (multiplicity symbol) of each positive root, aligned with positive_roots."""
    if isinstance(spec, RootData):
        return spec.slots
    return tuple(s for _, s in _classical_roots(spec.family, spec.rank))


def as_root_data(spec: Spec) -> RootData:
    if isinstance(spec, RootData):
        return spec
    return RootData(spec.rank, positive_roots(spec), root_slots(spec), name=str(spec), family=spec.family)


def load_root_data(path_or_obj) -> RootData:
    """Read ``{"positive_roots": [[...], ...], "g": {"2": "g", "1": "g_s"}}``.

    Root coordinates may be rationals given as strings (``"1/2"``); the keys of
    ``"g"`` are squared root lengths.
    """
    if isinstance(path_or_obj, dict):
        obj = path_or_obj
    else:
        with open(path_or_obj) as fh:
            obj = json.load(fh)
    roots = tuple(weight_from_values(Fraction(str(c)) for c in r) for r in obj["positive_roots"])
    gmap = {Fraction(str(k)): v for k, v in obj.get("g", {}).items()}
    slots = []
    for r in roots:
        length = inner(r, r)
        slots.append(gmap.get(length, "g"))
    dims = {len(r) for r in roots}
    if len(dims) != 1:
        raise ArityMismatch("positive roots of differing arity")
    return RootData(dims.pop(), roots, tuple(slots), name=obj.get("name", "custom"))


def rho(spec: Spec) -> tuple:
    """Half sum of positive roots, doubled coordinates."""
    roots = positive_roots(spec)
    total = [0] * spec.dim
    for r in roots:
        for i, c in enumerate(r):
            total[i] += c
    if any(c % 2 for c in total):
        raise ValueError("half sum of positive roots is not on the doubled lattice")
    return tuple(c // 2 for c in total)


# ---------------------------------------------------------------------------
# dominance

def is_dominant(spec: Spec, w: Sequence[int]) -> bool:
    _check_arity(spec, w)
    if isinstance(spec, RootData):
        return all(ip2(w, a) >= 0 for a in spec.positive_roots)
    fam, n = spec.family, spec.rank
    if any(w[i] < w[i + 1] for i in range(n - 1)):
        if fam != "D" or any(w[i] < w[i + 1] for i in range(n - 2)) or w[n - 2] < abs(w[n - 1]):
            return False
    parities = {x % 2 for x in w}
    if fam in ("A", "C", "BC"):
        return parities <= {0} and w[-1] >= 0
    if fam == "B":
        return len(parities) == 1 and w[-1] >= 0
    return len(parities) == 1 and (n == 1 or w[n - 2] >= abs(w[n - 1]))


def _partial_sums(d: Sequence[int]) -> list:
    return list(itertools.accumulate(d))


def _simple_coefficients(spec: RootSystemSpec, diff: Sequence[int]):
    """Coefficients (doubled) of ``diff`` in the simple-root basis, or None."""
    fam, n = spec.family, spec.rank
    s = _partial_sums(diff)
    if fam == "A":
        if s[-1] != 0:
            return None
        return s[:-1]
    if fam in ("B", "BC"):
        return s
    if fam == "C":
        return s[:-1] + [s[-1] // 2 if s[-1] % 4 == 0 else Fraction(s[-1], 2)]
    # D
    if n == 1:
        return None
    a2 = s[n - 2] - diff[n - 1]
    b2 = s[n - 2] + diff[n - 1]
    return s[: n - 2] + [Fraction(a2, 2), Fraction(b2, 2)]


def _in_cone(spec: Spec, diff: Sequence[int]) -> bool:
    """Is ``diff`` (doubled) a nonnegative integer combination of positive roots?"""
    if isinstance(spec, RootData):
        return _generic_in_cone(spec, tuple(diff))
    coeffs = _simple_coefficients(spec, diff)
    if coeffs is None:
        return False
    # doubled coefficients must be even and nonnegative
    return all(c >= 0 and Fraction(c) % 2 == 0 for c in coeffs)


def dominance_leq(spec: Spec, mu: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff lam - mu lies in the positive root cone Q+."""
    _check_arity(spec, mu, lam)
    diff = tuple(a - b for a, b in zip(lam, mu))
    if not any(diff):
        return True
    return _in_cone(spec, diff)


def height(spec: Spec, diff: Sequence[int]) -> Fraction:
    """Height of ``diff`` in the simple-root basis (true units)."""
    if isinstance(spec, RootData):
        # pairing with the half sum of positive coroots
        return sum((coroot_pairing(diff, a) for a in _reduced_roots(spec)), Fraction(0)) / 2
    coeffs = _simple_coefficients(spec, diff)
    if coeffs is None:
        raise ValueError("not in the root lattice")
    return Fraction(sum(Fraction(c) for c in coeffs), 2)


def _sort_key(spec: Spec, lam: Sequence[int]):
    def key(mu):
        diff = tuple(a - b for a, b in zip(lam, mu))
        return (-height(spec, diff), tuple(reversed(mu)))

    return key


def _box_candidates(spec: RootSystemSpec, lam: Sequence[int]) -> Iterable[tuple]:
    fam, n = spec.family, spec.rank
    top = max(abs(x) for x in lam)
    parity = lam[0] % 2 if fam in ("B", "D") else 0
    values = [v for v in range(top, -1, -1) if v % 2 == parity]

    def rec(prefix, bound, k):
        if k == n:
            yield tuple(prefix)
            return
        for v in values:
            if v > bound:
                continue
            yield from rec(prefix + [v], v, k + 1)

    for cand in rec([], top, 0):
        yield cand
        if fam == "D" and cand[-1] != 0:
            yield cand[:-1] + (-cand[-1],)


def dominant_interval(spec: Spec, lam: Sequence[int]) -> list:
    """All dominant mu <= lam, ordered by height of lam - mu (descending), lam last."""
    lam = tuple(lam)
    _check_arity(spec, lam)
    if not is_dominant(spec, lam):
        raise ValueError(f"{format_weight(lam)} is not dominant for {spec}")
    if isinstance(spec, RootData):
        found = _bfs_interval(spec, lam)
    else:
        found = [mu for mu in _box_candidates(spec, lam) if dominance_leq(spec, mu, lam)]
    found = sorted(set(found), key=_sort_key(spec, lam))
    assert found[-1] == lam
    return found


# ---------------------------------------------------------------------------
# generic (root-list) helpers

@lru_cache(maxsize=None)
def _reduced_roots(rd: RootData) -> tuple:
    roots = set(rd.positive_roots)
    return tuple(a for a in rd.positive_roots if not (all(c % 2 == 0 for c in a) and tuple(c // 2 for c in a) in roots))


@lru_cache(maxsize=None)
def _simple_roots(rd: RootData) -> tuple:
    red = _reduced_roots(rd)
    rset = set(red)
    simple = []
    for a in red:
        decomposable = False
        for b in red:
            c = tuple(x - y for x, y in zip(a, b))
            if c in rset:
                decomposable = True
                break
        if not decomposable:
            simple.append(a)
    return tuple(simple)


def _generic_in_cone(rd: RootData, diff: tuple) -> bool:
    simple = _simple_roots(rd)
    import sympy

    M = sympy.Matrix([[Fraction(c) for c in s] for s in simple]).T
    sol = M.gauss_jordan_solve(sympy.Matrix(list(diff)))[0] if len(simple) else None
    if sol is None:
        return False
    for v in sol:
        if not v.is_integer or v < 0:
            return False
    return True


def _bfs_interval(rd: RootData, lam: tuple) -> list:
    seen = {lam}
    queue = deque([lam])
    roots = rd.positive_roots
    while queue:
        mu = queue.popleft()
        for a in roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and is_dominant(rd, nu):
                seen.add(nu)
                queue.append(nu)
    return list(seen)


def reflect(x: Sequence[int], alpha: Sequence[int]) -> tuple:
    k = coroot_pairing(x, alpha)
    if k.denominator != 1:
        raise ValueError("weight not integral for this root")
    k = int(k)
    return tuple(a - k * b for a, b in zip(x, alpha))


def _generic_dominantize(rd: RootData, kappa: tuple) -> SignedWeight:
    x = kappa
    simple = _simple_roots(rd)
    changed = True
    while changed:
        changed = False
        for a in simple:
            if ip2(x, a) < 0:
                x = reflect(x, a)
                changed = True
    negative = sum(1 for a in _reduced_roots(rd) if ip2(kappa, a) < 0)
    stabilized = any(ip2(kappa, a) == 0 for a in rd.positive_roots)
    return SignedWeight(x, -1 if negative % 2 else 1, stabilized)


# ---------------------------------------------------------------------------
# Weyl group action

def _inversions(values: Sequence) -> int:
    """Number of pairs i < j with values[i] < values[j]."""
    n = len(values)
    return sum(1 for i in range(n) for j in range(i + 1, n) if values[i] < values[j])


def is_stabilized(spec: Spec, kappa: Sequence[int]) -> bool:
    return any(ip2(kappa, a) == 0 for a in positive_roots(spec))


def dominantize(spec: Spec, kappa: Sequence[int]) -> SignedWeight:
    """Dominant representative of W(kappa) with det of a shortest element."""
    kappa = tuple(kappa)
    _check_arity(spec, kappa)
    if isinstance(spec, RootData):
        return _generic_dominantize(spec, kappa)
    roots = _reduced_roots(as_root_data(spec))
    # the shortest element has length #{alpha > 0 : <kappa, alpha> < 0}
    negative = sum(1 for a in roots if ip2(kappa, a) < 0)
    stab = any(ip2(kappa, a) == 0 for a in roots)
    sign = -1 if negative % 2 else 1
    if spec.family == "A":
        return SignedWeight(tuple(sorted(kappa, reverse=True)), sign, stab)
    dom = sorted((abs(x) for x in kappa), reverse=True)
    if spec.family == "D" and sum(1 for x in kappa if x < 0) % 2 and dom[-1] != 0:
        dom[-1] = -dom[-1]
    return SignedWeight(tuple(dom), sign, stab)


def weyl_orbit(spec: Spec, mu: Sequence[int]) -> set:
    mu = tuple(mu)
    _check_arity(spec, mu)
    if isinstance(spec, RootData):
        return _generic_orbit(spec, mu)
    fam = spec.family
    perms = _distinct_permutations(mu if fam == "A" else tuple(abs(x) for x in mu))
    if fam == "A":
        return set(perms)
    out = set()
    has_zero = 0 in mu
    for p in perms:
        nz = [i for i, x in enumerate(p) if x != 0]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            if fam == "D" and not has_zero and signs.count(-1) % 2 != (sum(1 for x in mu if x < 0) % 2):
                continue
            v = list(p)
            for i, s in zip(nz, signs):
                v[i] = s * v[i]
            out.add(tuple(v))
    return out


def _distinct_permutations(seq: tuple) -> list:
    counts = Counter(seq)
    keys = sorted(counts, reverse=True)
    n = len(seq)
    out = []

    def rec(prefix):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                rec(prefix)
                prefix.pop()
                counts[k] += 1

    rec([])
    return out


def _generic_orbit(rd: RootData, mu: tuple) -> set:
    seen = {mu}
    queue = deque([mu])
    while queue:
        x = queue.popleft()
        for a in _simple_roots(rd):
            y = reflect(x, a)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation x -> (eps_j * x[perm_j])_j."""

    perm: tuple
    signs: tuple

    def __call__(self, x: Sequence) -> tuple:
        return tuple(e * x[p] for p, e in zip(self.perm, self.signs))

    @property
    def det(self) -> int:
        sgn = -1 if _inversions([-p for p in self.perm]) % 2 else 1
        for e in self.signs:
            sgn *= e
        return sgn


def weyl_group(spec: RootSystemSpec, guard: int = BRUTE_FORCE_RANK) -> list:
    """Explicit list of Weyl group elements (classical families)."""
    if isinstance(spec, RootData):
        raise TypeError("explicit enumeration is only available for classical families")
    if spec.rank > guard:
        raise RankGuardExceeded(f"rank {spec.rank} exceeds enumeration guard {guard}")
    n, fam = spec.rank, spec.family
    out = []
    for perm in itertools.permutations(range(n)):
        if fam == "A":
            out.append(WeylElement(perm, (1,) * n))
            continue
        for signs in itertools.product((1, -1), repeat=n):
            if fam == "D" and signs.count(-1) % 2:
                continue
            out.append(WeylElement(perm, signs))
    return out


# ---------------------------------------------------------------------------
# orbit and stabilizer counting (closed form)

def stabilizer_order(spec: Spec, lam: Sequence[int]) -> int:
    """|W_lam| from the product over positive roots orthogonal to lam."""
    lam = dominantize(spec, lam).weight
    roots = positive_roots(spec)
    rset = set(roots)
    r = rho(spec)
    value = Fraction(1)
    for a in roots:
        if ip2(lam, a) != 0:
            continue
        half = 1 if all(c % 2 == 0 for c in a) and tuple(c // 2 for c in a) in rset else 0
        base = coroot_pairing(r, a) + Fraction(half, 2)
        value *= (base + 1) / base
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral stabilizer order {value}")
    return int(value)


def weyl_group_order(spec: Spec) -> int:
    return stabilizer_order(spec, (0,) * spec.dim)


def orbit_size(spec: Spec, lam: Sequence[int]) -> int:
    return weyl_group_order(spec) // stabilizer_order(spec, lam)


# ---------------------------------------------------------------------------
# multiset operations on (doubled) weights

def _sign(x: int) -> int:
    return -1 if x < 0 else 1


def plus(lam: Sequence[int]) -> tuple:
    """lam with its last part replaced by its absolute value."""
    lam = tuple(lam)
    return lam[:-1] + (abs(lam[-1]),) if lam else lam


def bar(lam: Sequence[int]) -> tuple:
    """lam with the sign of its last part flipped."""
    lam = tuple(lam)
    return lam[:-1] + (-lam[-1],) if lam else lam


def set_difference(lam: Sequence[int], mu: Sequence[int]) -> tuple:
    """Multiset difference lam \\ mu, sorted decreasingly."""
    rest = Counter(lam)
    rest.subtract(Counter(mu))
    return tuple(sorted(rest.elements(), reverse=True))


def symmetric_difference(lam: Sequence[int], mu: Sequence[int]):
    """(lam+ \\ mu+, (mu+ \\ lam+)^eps) with eps = sign(lam_N) sign(mu_N)."""
    if len(lam) != len(mu):
        raise ArityMismatch("multiset operations need equal arity")
    first = set_difference(plus(lam), plus(mu))
    second = set_difference(plus(mu), plus(lam))
    eps = _sign(lam[-1]) * _sign(mu[-1])
    if second and eps < 0:
        second = bar(second)
    return first, second


def eta(lam: Sequence[int], m: int) -> int:
    """Number of parts of lam with absolute value |m|."""
    return sum(1 for x in lam if abs(x) == abs(m))


def part_sum(lam: Sequence[int]) -> int:
    return sum(lam)
