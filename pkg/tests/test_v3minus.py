"""The V3- invariant ring for p = 3: the facts that do hold for the reference data."""

from modq.groebner import Ideal, ideal_equal, kernel_of_algebra_map
from modq.invariants import presentation
from modq.poly import parse_poly
from modq.rep import build_representation

from test_acceptance import V3M_RELATIONS, v3m_reference

NAMES = ["f1", "f2", "f3", "h1", "h2", "h3"]
# fourth relation with its f2^2*h3 term replaced by f1^2*h3
R4_CORRECTED = "2*f1^3*h2 + f1^2*f2*h2 + f1^2*f3 + f1^2*h3 + 2*f1*f2*h3 + f2^3*h2 + 2*h1*h3"


def setup():
    rep = build_representation(3, 3, "V3-")
    gens = v3m_reference(rep)
    return rep, gens, kernel_of_algebra_map(gens, NAMES)


def test_reference_generators_are_invariant_and_have_degrees_2_2_6_4_4_6():
    rep, gens, _ = setup()
    assert all(rep.act(g) == g for g in gens)
    assert [g.degree() for g in gens] == [2, 2, 6, 4, 4, 6]


def test_computed_degrees():
    pres = presentation(build_representation(3, 3, "V3-"))
    assert sorted(pres.degrees) == [2, 2, 4, 4, 6, 6]
    assert len(pres.relations) == 6


def test_fourth_relation_as_stated_does_not_vanish():
    rep, gens, ker = setup()
    u = ker.ring
    r4 = parse_poly(V3M_RELATIONS[3], u)
    assert not r4.substitute(gens, rep.ring).is_zero()
    others = [parse_poly(t, u) for i, t in enumerate(V3M_RELATIONS) if i != 3]
    assert all(r.substitute(gens, rep.ring).is_zero() for r in others)


def test_corrected_relations_generate_the_kernel():
    _, _, ker = setup()
    u = ker.ring
    texts = list(V3M_RELATIONS)
    texts[3] = R4_CORRECTED
    assert ideal_equal(ker, Ideal([parse_poly(t, u) for t in texts], u))


def test_opposite_sign_convention_needs_the_transport():
    # untransported, the reference generators are not invariant under our generator
    rep = build_representation(3, 3, "V3-")
    raw = parse_poly("x*y + x*z + y^2", rep.ring)
    assert rep.act(raw) != raw
