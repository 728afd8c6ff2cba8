from __future__ import annotations

import itertools
import json
from fractions import Fraction

import pytest

from rootpoly.oracles import dominantize_bruteforce, orbit_stabilizer_bruteforce
from rootpoly.roots import (
    ArityMismatch,
    RankGuardExceeded,
    RootSystemSpec,
    bar,
    dominance_leq,
    dominant_interval,
    dominantize,
    eta,
    is_dominant,
    load_root_data,
    orbit_size,
    parse_weight,
    part_sum,
    set_difference,
    stabilizer_order,
    symmetric_difference,
    weight_values,
    weyl_group,
    weyl_group_order,
    weyl_orbit,
)

B3, C3, D3 = RootSystemSpec("B", 3), RootSystemSpec("C", 3), RootSystemSpec("D", 3)
W = parse_weight


def dominant_box(spec, bound):
    for w in itertools.product(range(-2 * bound, 2 * bound + 1), repeat=spec.dim):
        if is_dominant(spec, w):
            yield w


def test_parse_weight_and_values():
    assert W("3/2,1/2,1/2") == (3, 1, 1)
    assert weight_values((3, 1, -2)) == (Fraction(3, 2), Fraction(1, 2), -1)
    with pytest.raises(ValueError):
        W("1/3,0")


def test_spec_validation():
    assert RootSystemSpec("bc", 2).family == "BC"
    assert RootSystemSpec("B", 2).parameter_slots == ("g", "g_s")
    assert RootSystemSpec("BC", 2).parameter_slots == ("g", "g_s", "g_l")
    with pytest.raises(ValueError):
        RootSystemSpec("D", 1)
    with pytest.raises(ValueError):
        RootSystemSpec("E", 6)


def test_dominance_examples():
    assert dominance_leq(B3, W("1,1,0"), W("2,1,0"))
    assert dominance_leq(B3, W("2,1,0"), W("2,1,0"))
    assert not dominance_leq(C3, W("1,1,0"), W("2,1,0"))
    with pytest.raises(ArityMismatch):
        dominance_leq(B3, W("1,1"), W("2,1,0"))


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 2), ("C", 3), ("D", 3), ("BC", 2)])
def test_dominance_is_partial_order(family, rank):
    spec = RootSystemSpec(family, rank)
    ws = list(dominant_box(spec, 2))
    for a, b in itertools.product(ws, repeat=2):
        if a != b and dominance_leq(spec, a, b):
            assert not dominance_leq(spec, b, a)
    for a, b, c in itertools.islice(itertools.product(ws, repeat=3), 4000):
        if dominance_leq(spec, a, b) and dominance_leq(spec, b, c):
            assert dominance_leq(spec, a, c)


def test_intervals_printed():
    assert dominant_interval(B3, W("2,1,0")) == [W(x) for x in ("0,0,0", "1,0,0", "1,1,0", "2,0,0", "1,1,1", "2,1,0")]
    assert dominant_interval(D3, W("2,1,0")) == [W(x) for x in ("1,0,0", "1,1,-1", "1,1,1", "2,1,0")]
    assert dominant_interval(RootSystemSpec("A", 2), W("1,1")) == [W("1,1")]


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 3), ("BC", 3), ("B", 2)])
def test_interval_matches_bruteforce_and_is_down_closed(family, rank):
    spec = RootSystemSpec(family, rank)
    box = list(dominant_box(spec, 3))
    for lam in box:
        if family == "A" and lam[-1] != 0:
            continue
        got = dominant_interval(spec, lam)
        assert got[-1] == lam
        want = {mu for mu in box if dominance_leq(spec, mu, lam)}
        assert set(got) == want
        for i, mu in enumerate(got):  # a linear extension
            assert not any(dominance_leq(spec, nu, mu) and nu != mu for nu in got[i + 1:])


def test_orbits_and_counts():
    assert len(weyl_orbit(B3, W("1,1,0"))) == 12
    assert weyl_orbit(B3, (0, 0, 0)) == {(0, 0, 0)}
    assert len(weyl_orbit(RootSystemSpec("A", 3), W("2,1,0"))) == 6
    assert weyl_group_order(B3) == 48
    assert stabilizer_order(B3, W("1,1,0")) == 4
    assert orbit_size(B3, W("1,1,0")) == 12
    assert stabilizer_order(B3, W("3,2,1")) == 1
    assert stabilizer_order(B3, (0, 0, 0)) == 48
    assert weyl_group_order(RootSystemSpec("BC", 2)) == 8
    assert weyl_group_order(D3) == 24


def test_dominantize_examples():
    a2 = RootSystemSpec("A", 2)
    sw = dominantize(a2, W("1,2"))
    assert (sw.weight, sw.sign) == (W("2,1"), -1)
    sw = dominantize(B3, W("1,-2,3"))
    assert sw.weight == W("3,2,1")
    assert sw.sign == dominantize_bruteforce(B3, W("1,-2,3"))[1]
    sw = dominantize(B3, W("3,2,1"))
    assert (sw.weight, sw.sign, sw.stabilized) == (W("3,2,1"), 1, False)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 3), ("BC", 2), ("D", 4)])
def test_dominantize_against_bruteforce(family, rank):
    spec = RootSystemSpec(family, rank)
    for kappa in itertools.product(range(-4, 5, 2), repeat=rank):
        sw = dominantize(spec, kappa)
        dom, sign, stab = dominantize_bruteforce(spec, kappa)
        assert sw.weight == dom
        assert sw.stabilized == stab
        assert sw.sign == sign
        assert kappa in weyl_orbit(spec, sw.weight)


def test_multiset_ops():
    first, second = symmetric_difference(W("5,3,5/2,1,1"), W("4,3,3,1,-1"))
    assert first == W("5,5/2") and second == W("4,-3")
    assert symmetric_difference(W("2,1,0"), W("2,1,0")) == ((), ())
    assert eta(W("2,1,1,0"), 2) == 2
    assert bar(W("2,1,1")) == W("2,1,-1")
    assert set_difference(W("3,2,1"), W("2,1,1")) == W("3")
    assert part_sum(W("2,1,1")) == 8


def test_weyl_group_guard():
    with pytest.raises(RankGuardExceeded):
        weyl_group(RootSystemSpec("B", 6))
    assert len(weyl_group(B3)) == 48


def test_bruteforce_counts_small():
    orbit, stab = orbit_stabilizer_bruteforce(B3, W("1,1,0"))
    assert (len(orbit), stab) == (12, 4)


def test_load_root_data(tmp_path):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps({
        "positive_roots": [[1, -1, 0], [0, 1, -1], [1, 0, -1]],
        "g": {"2": "g"},
        "name": "A2",
    }))
    rd = load_root_data(str(path))
    assert rd.dim == 3 and rd.slots == ("g", "g", "g")
    assert dominant_interval(rd, W("2,1,0")) == dominant_interval(RootSystemSpec("A", 3), W("2,1,0"))
