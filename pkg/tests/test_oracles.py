from __future__ import annotations

from fractions import Fraction

import pytest
from _support import corpus

from rootpoly.exact_arith import Scalar
from rootpoly.heckman_opdam import compute_ho, ho_eigenvalue, ho_triangular_data
from rootpoly.lattice import LatticeElement
from rootpoly.macdonald import compute_macdonald
from rootpoly.oracles import (
    NonIntegerParams,
    NotInvariant,
    apply_hypergeometric_operator,
    apply_macdonald_operator,
    character_element,
    check_eigenfunction,
    check_orthogonal,
    constant_term_inner_product,
    dominant_part,
    expansion_element,
    is_invariant,
    monomial,
    numerator_element,
    orbit_stabilizer_bruteforce,
    weight_function_expand,
    weyl_character,
)
from rootpoly.roots import RootSystemSpec, parse_weight, weyl_group

W = parse_weight
g = Scalar.symbol("g")
A2, B2, B3 = RootSystemSpec("A", 2), RootSystemSpec("B", 2), RootSystemSpec("B", 3)


def _invariant_under_group(spec, f):
    return all(LatticeElement({w(k): c for k, c in f.terms.items()}).terms == f.terms for w in weyl_group(spec))


def test_weight_function_examples():
    assert weight_function_expand(B2, "HO", {}).terms == {(0, 0): 1}
    a2 = weight_function_expand(A2, "HO", {"g": 1})
    assert a2.terms == {(0, 0): 2, (2, -2): -1, (-2, 2): -1}
    b2 = weight_function_expand(B2, "HO", {"g": 1, "g_s": 1})
    assert len(b2.terms) == 33  # confirmed by an independent sympy expansion
    assert _invariant_under_group(B2, b2)
    m = weight_function_expand(B2, "M", {"g": 2, "g_s": 1})
    assert _invariant_under_group(B2, LatticeElement({k[:2]: 1 for k in m.terms}))
    with pytest.raises(NonIntegerParams):
        weight_function_expand(B2, "HO", {"g": Fraction(1, 2)})
    with pytest.raises(NonIntegerParams):
        weight_function_expand(B2, "M", {"g": g})


def test_inner_product_examples():
    one = monomial(A2, (0, 0))
    assert constant_term_inner_product(A2, one, one, LatticeElement({(0, 0): 1})) == 1
    delta = weight_function_expand(A2, "HO", {"g": 1})
    p = expansion_element(A2, compute_ho(A2, {"g": 1}, W("2,0")).coeffs)
    assert constant_term_inner_product(A2, p, monomial(A2, W("1,1")), delta).is_zero()
    dm = weight_function_expand(A2, "M", {"g": 1})
    assert constant_term_inner_product(A2, monomial(A2, W("1,0")), monomial(A2, W("2,0")), dm).is_zero()


def test_inner_product_symmetry():
    delta = weight_function_expand(B2, "HO", {"g": 1, "g_s": 2})
    f = monomial(B2, W("2,1")) + monomial(B2, W("1,0"), 3)
    h = monomial(B2, W("1,1"), 2) + monomial(B2, W("2,1"))
    assert constant_term_inner_product(B2, f, h, delta) == constant_term_inner_product(B2, h, f, delta)


def test_characters():
    a3 = RootSystemSpec("A", 3)
    assert weyl_character(a3, W("2,1,0"))[W("1,1,1")] == 2
    assert weyl_character(B2, (0, 0)).coeffs == {(0, 0): 1}
    for spec in (a3, B2, RootSystemSpec("C", 3), RootSystemSpec("D", 3)):
        for lam in corpus(spec, 2, 12):
            chi = weyl_character(spec, lam)
            assert chi[lam] == 1
            assert all(isinstance(c, int) and c >= 0 for c in chi.coeffs.values())
            assert is_invariant(spec, character_element(spec, lam))


def test_bruteforce_orbits():
    assert orbit_stabilizer_bruteforce(B3, W("1,1,0"))[0].__len__() == 12
    assert orbit_stabilizer_bruteforce(B3, W("1,1,0"))[1] == 4
    assert orbit_stabilizer_bruteforce(B3, W("3,2,1"))[1] == 1
    assert orbit_stabilizer_bruteforce(B3, (0, 0, 0)) == ({(0, 0, 0)}, 48)


def test_not_invariant():
    f = LatticeElement({(2, 0): 1})
    with pytest.raises(NotInvariant):
        apply_hypergeometric_operator(A2, {}, f)
    with pytest.raises(NotInvariant):
        apply_macdonald_operator(A2, None, None, f)


def test_hypergeometric_operator_examples():
    assert apply_hypergeometric_operator(A2, {}, monomial(A2, (0, 0))).terms == {}
    for spec in (A2, B2, RootSystemSpec("D", 3)):
        for lam in corpus(spec, 2, 6):
            image = dominant_part(spec, apply_hypergeometric_operator(spec, {}, monomial(spec, lam)))
            assert image[lam] == ho_eigenvalue(spec, {}, lam)
            assert is_invariant(spec, apply_hypergeometric_operator(spec, {}, monomial(spec, lam)))
    td = ho_triangular_data(A2, {}, W("2,0"))
    assert check_eigenfunction(A2, td, lambda f: apply_hypergeometric_operator(A2, {}, f))


def test_macdonald_operator_trivializes_at_t_one():
    q = Scalar.symbol("q")
    image = dominant_part(A2, apply_macdonald_operator(A2, None, {"t": 1}, monomial(A2, W("2,0"))))
    assert image == {W("2,0"): q ** 2 + 1}


def test_orthogonality_oracle_detects_failure():
    weight = weight_function_expand(A2, "HO", {"g": 2})
    good = numerator_element(A2, ho_triangular_data(A2, {"g": 2}, W("2,0")))
    assert check_orthogonal(A2, [monomial(A2, W("1,1")), good], weight)
    assert not check_orthogonal(A2, [monomial(A2, W("1,1")), monomial(A2, W("2,0"))], weight)


def test_macdonald_orthogonality_a1():
    for gv in (1, 2):
        q = Scalar.symbol("q")
        p = compute_macdonald(A2, None, {"t": q ** gv}, W("2,0"))
        weight = weight_function_expand(A2, "M", {"g": gv})
        assert constant_term_inner_product(A2, expansion_element(A2, p.coeffs), monomial(A2, W("1,1")), weight).is_zero()


def test_monomial_inner_product_fast_path_matches_generic():
    from rootpoly.macdonald import mac_triangular_data
    from rootpoly.oracles import inner_product_with_monomial, weight_table

    q = Scalar.symbol("q")
    for weight in (weight_function_expand(B2, "M", {"g": 1, "g_s": 2}), weight_function_expand(B2, "HO", {"g": 2, "g_s": 1})):
        table = weight_table(B2, weight)
        for lam in corpus(B2, 2, 6):
            f = numerator_element(B2, mac_triangular_data(B2, None, {"t": q}, lam))
            h = expansion_element(B2, compute_ho(B2, {"g": 2, "g_s": 1}, lam).coeffs)  # rational coefficients
            for mu in corpus(B2, 2, 6):
                for elem in (f, h):
                    want = constant_term_inner_product(B2, elem, monomial(B2, mu), weight)
                    assert inner_product_with_monomial(B2, elem, mu, table) == want
