import pytest

from modq.errors import InvalidWeight
from modq.groebner import Ideal, ideal_equal, kernel_of_algebra_map, same_subalgebra
from modq.invariants import (diagonal_binomials, diagonal_relations, format_binomial, hilbert_basis_diagonal,
                             hilbert_series_check, invariant_dims, invariant_space, minimal_generators,
                             monomial_invariant_oracle, norm, polynomial_algebra_series, presentation,
                             wk_route_generators)
from modq.poly import parse_poly
from modq.rep import build_representation


def P(text, ring):
    return parse_poly(text, ring)


def test_no_linear_invariants_for_2v1minus():
    rep = build_representation(3, 3, "2V1-")
    assert invariant_space(rep, 1) == []


def test_quadratic_invariants_for_2v1minus():
    rep = build_representation(3, 3, "2V1-")
    r = rep.ring
    assert same_subalgebra(invariant_space(rep, 2), [P(s, r) for s in ("x^2", "x*y", "y^2")])
    assert len(invariant_space(rep, 2)) == 3


def test_constants():
    rep = build_representation(5, 5, "V3+")
    assert [str(f) for f in invariant_space(rep, 0)] == ["1"]


def test_v2plus_generators():
    rep = build_representation(3, 3, "V2+")
    g = minimal_generators(rep, 6)
    r = rep.ring
    assert g.degrees == [1, 3]
    assert same_subalgebra(g.generators, [P("x", r), P("y^3 - x^2*y", r)])


def test_3v1minus_generators():
    rep = build_representation(3, 3, "3V1-")
    g = minimal_generators(rep, 4)
    r = rep.ring
    assert g.degrees == [2] * 6
    assert set(g.generators) == {P(s, r) for s in ("x^2", "y^2", "z^2", "x*y", "x*z", "y*z")}


def test_wk_degrees():
    rep = build_representation(3, 2, "W1")
    assert minimal_generators(rep, 8).degrees == [3, 3, 6]


def test_norms():
    rep = build_representation(3, 3, "V2+")
    assert norm(rep, 2, "y") == P("y^3 - x^2*y", rep.ring)
    rep = build_representation(5, 5, "V1-")
    assert norm(rep, 1, "x") == P("-x^2", rep.ring)
    rep = build_representation(3, 3, "V3+")
    nz = norm(rep, 2, "z")
    assert nz.degree() == 3 and rep.act(nz) == nz


def test_hilbert_basis_small_cases():
    assert hilbert_basis_diagonal(5, 1, 2).pairs == [(5, 0), (3, 1), (1, 2), (0, 5)]
    assert hilbert_basis_diagonal(3, 1, 2).pairs == [(3, 0), (1, 1), (0, 3)]
    assert hilbert_basis_diagonal(7, 1, 3).pairs == [(7, 0), (4, 1), (1, 2), (0, 7)]
    with pytest.raises(InvalidWeight):
        hilbert_basis_diagonal(5, 0, 2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hilbert_basis_matches_monomial_oracle(p):
    for i in range(1, p):
        for j in range(1, p):
            rep = build_representation(p, 2, f"V{i},V{j}")
            assert hilbert_basis_diagonal(p, i, j).pairs == monomial_invariant_oracle(rep, 2 * p)


def test_diagonal_relations_p5():
    hb = hilbert_basis_diagonal(5, 1, 2)
    rels = diagonal_relations(hb)
    assert len(rels) == 3
    assert [format_binomial(a, b) for a, b in diagonal_binomials(hb)] == [
        "U1*U3 - U2^2", "U1*U4 - U2*U3^2", "U2*U4 - U3^3"]


def test_diagonal_relations_generate_kernel():
    # over the field carrying the action, the binomials are the full relation ideal
    hb = hilbert_basis_diagonal(5, 1, 2)
    rep = build_representation(5, 2, "V1,V2")
    assert same_subalgebra(hb.monomials(rep.ring), presentation(rep).generators.generators)
    ker = kernel_of_algebra_map(hb.monomials(rep.ring))
    rels = diagonal_relations(hb, rep.field)
    assert ideal_equal(ker, Ideal(rels, ker.ring))


def test_v3_c4_presentation():
    rep = build_representation(2, 2, "V3")
    pres = presentation(rep)
    assert pres.degrees == [1, 2, 3, 4]
    assert [str(r) for r in pres.relations] == ["U1^2*U4 + U1*U2*U3 + U2^3 + U3^2"]
    assert pres.presentation_class == "hypersurface"
    assert pres.check()


def test_2v2_presentation():
    rep = build_representation(2, 2, "2V2")
    pres = presentation(rep)
    r = rep.ring
    assert pres.degrees == [1, 1, 2, 2, 2]
    ref = [P(s, r) for s in ("x1", "x3", "x1*x2 + x2^2", "x3*x4 + x4^2", "x1*x4 + x2*x3")]
    assert same_subalgebra(pres.generators.generators, ref)
    assert len(pres.relations) == 1


def test_wk_route_agrees_with_direct_computation():
    for k in range(3):
        rep = build_representation(3, 2, f"W{k}")
        assert same_subalgebra(wk_route_generators(rep), presentation(rep).generators.generators)


def test_hilbert_dims_polynomial_cases():
    rep = build_representation(3, 3, "V2+")
    assert invariant_dims(rep, 4) == [1, 1, 1, 2, 2]
    assert polynomial_algebra_series([1, 2], 3) == [1, 1, 2, 2]


def test_3v1minus_h_vector():
    rep = build_representation(3, 3, "3V1-")
    hd = hilbert_series_check(presentation(rep), rep, 6)
    assert hd.dims == [1, 0, 6, 0, 15, 0, 28]
    assert hd.consistent
    assert hd.h_vector == [1, 3] and hd.h_step == 2
    assert hd.krull_dim == 3


def test_3v1minus_relations_p5():
    rep = build_representation(5, 5, "3V1-")
    pres = presentation(rep)
    assert pres.degrees == [2] * 6
    assert len(pres.relations) == 6
    assert pres.presentation_class == "other"
