import pytest
from hypothesis import given, settings, strategies as st

from modq.errors import BudgetExceeded, RingMismatch
from modq.field import make_field
from modq.groebner import (Ideal, groebner_basis, ideal_equal, is_groebner, kernel_of_algebra_map, normal_form,
                           s_polynomial, same_subalgebra, subalgebra_membership)
from modq.poly import MonomialOrder, MultiPoly, PolyRing, parse_poly
from modq.structure import jordan4_invariants, jordan4_ring


def lex_ring(p, names, k=1):
    return PolyRing(make_field(p, k), names, MonomialOrder("lex", len(names)))


def test_single_monomial():
    r = lex_ring(2, ["x", "y"])
    assert [str(g) for g in groebner_basis(Ideal([r.var("x")])).basis] == ["x"]


def test_hand_buchberger_gf5():
    r = lex_ring(5, ["x", "y"])
    gb = groebner_basis(Ideal([parse_poly("x*y - 1", r), parse_poly("y^2 - 1", r)]))
    assert set(gb.basis) == {parse_poly("x - y", r), parse_poly("y^2 - 1", r)}


def test_cone_is_its_own_basis():
    r = PolyRing(make_field(3), ["z1", "z2", "z3"])
    f = parse_poly("z2^2 - z1*z3", r)
    gb = groebner_basis(Ideal([f]))
    assert gb.basis == [f.monic(r.order)]


def test_normal_form_substitutes():
    r = lex_ring(5, ["x", "y"])
    gb = groebner_basis(Ideal([parse_poly("x - y", r)]))
    assert normal_form(parse_poly("x^2", r), gb) == parse_poly("y^2", r)


def test_normal_form_of_member_is_zero():
    r = PolyRing(make_field(3), ["x", "y"])
    a, b = parse_poly("x^2 + y", r), parse_poly("x*y - 1", r)
    gb = groebner_basis(Ideal([a, b]))
    assert normal_form(a * b + b * b - a, gb).is_zero()


def test_normal_form_ring_mismatch():
    r = PolyRing(make_field(3), ["x", "y"])
    s = PolyRing(make_field(3), ["u", "v"])
    gb = groebner_basis(Ideal([r.var("x")]))
    with pytest.raises(RingMismatch):
        normal_form(s.var("u"), gb)


def test_jordan4_identity():
    ring = jordan4_ring(5)
    l1, l2, l3, n = jordan4_invariants(ring, 5)
    gb = groebner_basis(Ideal([l1]))
    assert normal_form(l3 * n - l2 ** 4, gb).is_zero()


def test_kernel_of_squares():
    r = PolyRing(make_field(3), ["x", "y"])
    x, y = r.gens()
    ker = kernel_of_algebra_map([x * x, x * y, y * y])
    u = ker.ring
    assert len(ker) == 1
    assert ideal_equal(ker, Ideal([parse_poly("U2^2 - U1*U3", u)]))


def test_kernel_of_free_algebra_is_empty():
    r = PolyRing(make_field(3), ["x", "y"])
    assert len(kernel_of_algebra_map(list(r.gens()))) == 0


def test_kernel_wk_invariants():
    r = PolyRing(make_field(2, 2), ["x", "y"])
    x, y = r.gens()
    ker = kernel_of_algebra_map([x ** 3, x * x * y + x * y * y, (x * y + y * y) ** 3])
    assert [str(g) for g in ker] == ["U1*U3 + U2^3"]


def test_membership_cases():
    r = PolyRing(make_field(2), ["x", "y"])
    x, y = r.gens()
    m = subalgebra_membership(x * x, [x])
    assert m.member and str(m.expression) == "U1^2"
    assert not subalgebra_membership(y * y, [x, x * y + y * y]).member
    gens = [x ** 5, x ** 3 * y, x * y ** 2, y ** 5]
    m = subalgebra_membership(x ** 5 * y ** 5, gens)
    assert m.member and str(m.expression) == "U2*U3^2"


def test_same_subalgebra_two_sided():
    r = PolyRing(make_field(2), ["x", "y"])
    x, y = r.gens()
    assert same_subalgebra([x, x * y + y * y], [x, x * y + y * y + x * x])
    assert not same_subalgebra([x, y * y], [x, y])


def test_budget_exceeded():
    r = PolyRing(make_field(7), ["x", "y", "z"])
    gens = [parse_poly(s, r) for s in ("x^3 + y*z + 1", "y^3 + x*z^2 + 2", "z^3 + x^2*y + 3")]
    with pytest.raises(BudgetExceeded) as info:
        groebner_basis(Ideal(gens), max_pairs=2)
    assert info.value.partial is not None


RING = PolyRing(make_field(3), ["x", "y", "z"])
polys = st.dictionaries(st.tuples(*[st.integers(0, 2)] * 3), st.integers(1, 2), min_size=1, max_size=4).map(
    lambda d: MultiPoly(RING, d))


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3))
def test_s_polynomials_reduce_to_zero(gens):
    gb = groebner_basis(Ideal(gens))
    assert is_groebner(gb)
    for i, f in enumerate(gb.basis):
        for g in gb.basis[i + 1:]:
            assert normal_form(s_polynomial(f, g, gb.order), gb).is_zero()
    for f in gens:
        assert normal_form(f, gb).is_zero()
