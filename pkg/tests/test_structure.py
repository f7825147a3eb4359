import pytest

from modq.field import make_field
from modq.invariants import hilbert_series_check, presentation
from modq.poly import PolyRing
from modq.rep import build_representation
from modq.structure import (classify_cm, cm_defect, gorenstein_verdict, jordan4_probe, regular_sequence_probe,
                            structure_report)

FAITHFUL_P5 = {
    "V2+ + b*V1- (b >= 1)", "2V2+ + b*V1- (b >= 1)", "V3+ + b*V1- (b >= 1)",
    "V2- + b*V1- (b >= 0)", "2V2- + b*V1- (b >= 0)", "V3- + b*V1- (b >= 0)",
    "V2+,V2- + b*V1- (b >= 0)",
}


@pytest.mark.parametrize("summands, defect", [("V4+", 1), ("V4-", 1), ("V2+,V2-", 0), ("3V1-", 0), ("V1-", 0)])
def test_cm_defect(summands, defect):
    assert cm_defect(build_representation(5, 5, summands)) == defect


def test_classify_faithful():
    assert set(classify_cm(5, 5, faithful=True).labels()) == FAITHFUL_P5


def test_classify_non_faithful():
    assert set(classify_cm(5, 5, faithful=False).labels()) == {"b*V1- (b >= 1)", "V2+", "2V2+", "V3+"}


def test_classify_dimension_three():
    assert set(classify_cm(5, 5, dimension=3).labels()) == {"V1-,V2+", "V3+", "3V1-", "V3-", "V1-,V2-"}


def test_classify_c4():
    assert set(classify_cm(2, 2).labels()) == {"V3", "V2", "2V2"}


def test_classified_instances_have_zero_defect():
    for fam in classify_cm(5, 5).families:
        for summands in fam.instances(2):
            assert cm_defect(build_representation(5, 5, ",".join(s.label for s in summands))) == 0


def test_gorenstein_rule2_yes():
    v = gorenstein_verdict(build_representation(5, 2, "V2,V3"))
    assert (v.verdict, v.rule) == ("yes", 2)


def test_gorenstein_rule2_no():
    v = gorenstein_verdict(build_representation(5, 2, "V1,V2"))
    assert (v.verdict, v.rule) == ("no", 2)


def test_gorenstein_3v1minus():
    # the image {I, -I} is non-modular and reflection-free, so the determinant rule fires first
    rep = build_representation(3, 3, "3V1-")
    pres = presentation(rep)
    v = gorenstein_verdict(rep, pres)
    assert (v.verdict, v.rule) == ("no", 2)
    hd = hilbert_series_check(pres, rep)
    assert hd.h_vector == [1, 3] and not hd.h_symmetric


def test_gorenstein_rule3():
    rep = build_representation(3, 3, "V3-")
    v = gorenstein_verdict(rep, presentation(rep))
    assert (v.verdict, v.rule) == ("no", 3)
    assert "(1, 0, 2, 1)" in v.witness


def test_gorenstein_rule1_hypersurface():
    rep = build_representation(2, 2, "V3")
    v = gorenstein_verdict(rep, presentation(rep))
    assert (v.verdict, v.rule) == ("yes", 1)


def test_undecided_without_presentation():
    v = gorenstein_verdict(build_representation(3, 3, "V3-"))
    assert v.verdict == "undecided"


def test_probe_trivially_regular():
    ring = PolyRing(make_field(3), ["x"])
    x = ring.var("x")
    assert regular_sequence_probe([x], [x]).verdict == "regular"


def test_probe_detects_zero_divisor():
    # x^2, xy, y^2 in F[x^2, xy, y^2]: xy * xy = x^2 * y^2, so (x^2, xy) is not regular
    ring = PolyRing(make_field(3), ["x", "y"])
    x, y = ring.gens()
    gens = [x * x, x * y, y * y]
    rep = regular_sequence_probe([x * x, x * y], gens, window=4)
    assert rep.verdict == "not-regular"


@pytest.mark.parametrize("sign", ["+", "-"])
def test_jordan4_probe(sign):
    rep = jordan4_probe(5, sign)
    assert rep.verdict == "not-regular"
    assert rep.identity["holds"]
    assert rep.named_witness is not None


def test_structure_report():
    rep = build_representation(2, 2, "2V2")
    r = structure_report(rep, presentation(rep))
    assert r.is_cm and r.presentation_class == "hypersurface" and r.gorenstein.verdict == "yes"
