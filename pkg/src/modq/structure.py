"""Cohen-Macaulay defect, classification of CM families, Gorenstein verdicts and regular-sequence probes."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from math import lcm

from . import linalg
from .errors import ModqError
from .groebner import Ideal, groebner_basis, normal_form, subalgebra_membership
from .invariants import (AlgebraPresentation, GeneratorSet, _SubalgebraSpans, hilbert_series_check,
                         invariant_space)
from .poly import MonomialOrder, MultiPoly, PolyRing
from .rep import (CHARP, IndecomposableSpec, Representation, format_summands, indecomposable_catalog,
                  regime_of, structure_predicates)


def cm_defect(rep: Representation) -> int:
    return max(rep.fixed_codim(rep.sylow_exponent) - 2, 0)


# ---------- classification ----------

@dataclass(frozen=True)
class Family:
    """fixed summands plus any number (>= free_min) of the free summands."""

    fixed: tuple
    free: tuple = ()
    free_min: int = 0
    free_max: int | None = None  # None: unbounded

    def key(self):
        return (tuple(s.label for s in self.fixed), tuple(s.label for s in self.free), self.free_min, self.free_max)

    @property
    def label(self):
        parts = [format_summands(self.fixed)] if self.fixed else []
        if self.free and self.free_max != 0:
            names = "+".join(s.label for s in self.free)
            sym = f"b*{names}" if len(self.free) == 1 else f"b*({names})"
            parts.append(sym)
        text = " + ".join(parts)
        if self.free and self.free_max != 0:
            text += f" (b >= {self.free_min})"
        return text

    def instances(self, bmax=3):
        """Concrete summand lists with at most bmax free summands."""
        if not self.free or self.free_max == 0:
            return [list(self.fixed)]
        hi = bmax if self.free_max is None else min(bmax, self.free_max)
        out = []
        for b in range(self.free_min, hi + 1):
            for extra in combinations_with_replacement(self.free, b):
                out.append(list(self.fixed) + list(extra))
        return out

    def to_json(self):
        return {"fixed": [s.label for s in self.fixed], "free": [s.label for s in self.free],
                "free_min": self.free_min, "free_max": self.free_max, "label": self.label}


@dataclass
class ClassificationResult:
    p: int
    characteristic: int
    families: list
    options: dict = dc_field(default_factory=dict)

    def keys(self):
        return {f.key() for f in self.families}

    def labels(self):
        return [f.label for f in self.families]

    def to_json(self):
        return {"p": self.p, "characteristic": self.characteristic, "options": self.options,
                "families": [f.to_json() for f in self.families]}


def _single(p, characteristic, spec):
    return Representation(p, characteristic, [spec])


def classify_cm(p: int, characteristic: int, faithful: bool | None = None,
                dimension: int | None = None) -> ClassificationResult:
    """All reduced representations with zero CM defect, free parts kept symbolic."""
    regime_of(p, characteristic)
    specs = [s for s in indecomposable_catalog(p, characteristic) if not s.is_trivial]
    info = {}
    for s in specs:
        r = _single(p, characteristic, s)
        info[s] = (r.fixed_codim(r.sylow_exponent), r.image_order)
    fixed_specs = [s for s in specs if info[s][0] > 0]
    free_specs = tuple(s for s in specs if info[s][0] == 0)
    order = 2 * p

    def group_order(ss):
        n = 1
        for s in ss:
            n = lcm(n, info[s][1])
        return n

    fixed_sets = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for base in frontier:
            start = fixed_specs.index(base[-1]) if base else 0
            for s in fixed_specs[start:]:
                cand = base + (s,)
                if sum(info[t][0] for t in cand) <= 2:
                    nxt.append(cand)
        fixed_sets.extend(nxt)
        frontier = nxt

    families = []
    for fx in fixed_sets:
        n = group_order(fx)
        if faithful is None:
            fam = Family(fx, free_specs, 0 if fx else 1, None) if free_specs else Family(fx)
        elif faithful:
            if n == order:
                fam = Family(fx, free_specs, 0, None) if free_specs else Family(fx)
            else:
                helpers = tuple(s for s in free_specs if lcm(n, info[s][1]) == order)
                if not helpers:
                    continue
                fam = Family(fx, helpers, 1, None)
        else:
            if n == order:
                continue
            keep = tuple(s for s in free_specs if lcm(n, info[s][1]) != order)
            if fx:
                fam = Family(fx, keep, 0, None) if keep else Family(fx)
            elif keep:
                fam = Family(fx, keep, 1, None)
            else:
                continue
        if not fam.fixed and not fam.free:
            continue
        families.append(fam)

    if dimension is not None:
        concrete = []
        for fam in families:
            fdim = sum(s.dimension for s in fam.fixed)
            left = dimension - fdim
            if left < 0:
                continue
            if not fam.free or fam.free_max == 0:
                if left == 0:
                    concrete.append(Family(fam.fixed))
                continue
            for b in range(fam.free_min, left + 1):
                for extra in combinations_with_replacement(fam.free, b):
                    if sum(s.dimension for s in extra) == left:
                        members = tuple(sorted(fam.fixed + extra))
                        if faithful is not None and (group_order(members) == order) != faithful:
                            continue
                        concrete.append(Family(members))
        families = concrete

    uniq = {}
    for f in families:
        uniq.setdefault(f.key(), f)
    families = sorted(uniq.values(), key=lambda f: f.key())
    return ClassificationResult(p, characteristic, families,
                                {"faithful": faithful, "dimension": dimension})


# ---------- Gorenstein ----------

@dataclass
class Verdict:
    verdict: str  # yes | no | undecided
    rule: int
    witness: str

    def to_json(self):
        return {"verdict": self.verdict, "rule": self.rule, "witness": self.witness}


def gorenstein_verdict(rep: Representation, pres: AlgebraPresentation | None = None,
                       degree_bound: int | None = None) -> Verdict:
    """First applicable rule wins; see README for the rule list."""
    if pres is not None and pres.presentation_class in ("polynomial", "hypersurface", "ci"):
        return Verdict("yes", 1, f"presentation is {pres.presentation_class}")
    preds = structure_predicates(rep)
    n = rep.image_order
    field = rep.field
    if n % rep.characteristic and not preds.has_reflection:
        dets = [linalg.det(field, rep.elements[e]) for e in range(n)]
        bad = next((e for e, d in enumerate(dets) if d != 1), None)
        witness = f"det(sigma) = {field.format(dets[1 % n])}"
        if bad is None:
            return Verdict("yes", 2, witness + "; image in SL")
        return Verdict("no", 2, witness + f"; det(sigma^{bad}) != 1")
    if pres is not None and cm_defect(rep) == 0:
        hd = hilbert_series_check(pres, rep, degree_bound)
        if not hd.h_symmetric:
            return Verdict("no", 3, f"h-vector {tuple(hd.h_vector)} is not symmetric")
    return Verdict("undecided", 4, "no rule applies")


# ---------- regular sequences ----------

class _Pieces:
    """Graded pieces A_d of an invariant ring or of a finitely generated subalgebra."""

    def __init__(self, algebra):
        if isinstance(algebra, Representation):
            self.rep = algebra
            self.ring = algebra.ring
            self._spans = None
        else:
            gens = list(algebra.generators if isinstance(algebra, GeneratorSet) else algebra)
            self.rep = None
            self.ring = gens[0].ring
            self.gens = gens
            self._spans = _SubalgebraSpans(self.ring)
            for d in sorted({g.degree() for g in gens}):
                self._spans.span(d)
                self._spans.add_generators(d, [g for g in gens if g.degree() == d])

    def piece(self, d):
        if d < 0:
            return []
        if self.rep is not None:
            return invariant_space(self.rep, d)
        return self._spans.span(d)

    def contains(self, f):
        if self.rep is not None:
            return self.rep.act(f) == f
        return subalgebra_membership(f, self.gens).member


def _ideal_piece(field, key, pieces, elements, n):
    """Echelon of (elements) * A in degree n; payloads index (element, basis position)."""
    ech = linalg.Echelon(field, key=key)
    for j, a in enumerate(elements):
        basis = pieces.piece(n - a.degree())
        for idx, b in enumerate(basis):
            ech.add((a * b).terms, {(j, idx): 1})
    return ech


@dataclass
class ProbeStep:
    index: int
    witness: MultiPoly | None
    degree: int | None
    leading_monomial: tuple | None
    cofactors: list | None

    def to_json(self, names):
        if self.witness is None:
            return {"index": self.index, "witness": None}
        lm = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(names, self.leading_monomial) if e) or "1"
        return {"index": self.index, "witness": str(self.witness), "degree": self.degree,
                "leading_monomial": lm, "cofactors": [str(c) for c in self.cofactors]}


@dataclass
class ProbeReport:
    verdict: str  # regular | not-regular | inconclusive
    steps: list
    window: int
    identity: dict | None = None
    named_witness: ProbeStep | None = None

    def to_json(self, names):
        out = {"verdict": self.verdict, "window": self.window, "identity": self.identity,
               "steps": [s.to_json(names) for s in self.steps]}
        if self.named_witness is not None:
            out["named_witness"] = self.named_witness.to_json(names)
        return out


def find_zero_divisor(elements, i, pieces, e, order=None):
    """A w in A_e with elements[i]*w in (elements[:i])A but w not in it, or None."""
    ring = pieces.ring
    field = ring.field
    key = (order or ring.order).key
    prev = elements[:i]
    a = elements[i]
    basis = pieces.piece(e)
    if not basis:
        return None
    big = _ideal_piece(field, key, pieces, prev, e + a.degree())
    small = _ideal_piece(field, key, pieces, prev, e)
    vecs = [big.reduce((a * b).terms)[0] for b in basis]
    for combo in linalg.kernel(field, vecs):
        w = MultiPoly(ring, {})
        for idx, c in combo.items():
            w = w + basis[idx].scale(c)
        rem, _ = small.reduce(w.terms)
        if rem:
            w = MultiPoly(ring, rem)
            w = w.monic(order or ring.order)
            lm = w.leading_monomial(order or ring.order)
            _, payload = big.reduce((a * w).terms, {})
            cof = [ring.zero() for _ in prev]
            for (j, idx), c in payload.items():
                b = pieces.piece(e + a.degree() - prev[j].degree())[idx]
                cof[j] = cof[j] - b.scale(c)
            return w, lm, cof
    return None


def check_witness(elements, i, w, algebra, order=None):
    """ProbeStep if w certifies that elements[i] is a zero divisor modulo elements[:i], else None."""
    pieces = algebra if isinstance(algebra, _Pieces) else _Pieces(algebra)
    ring = pieces.ring
    key = (order or ring.order).key
    prev = elements[:i]
    a = elements[i]
    e = w.degree()
    big = _ideal_piece(ring.field, key, pieces, prev, e + a.degree())
    rem, payload = big.reduce((a * w).terms, {})
    if rem:
        return None
    small = _ideal_piece(ring.field, key, pieces, prev, e)
    rem_w, _ = small.reduce(w.terms)
    if not rem_w:
        return None
    lm = MultiPoly(ring, rem_w).leading_monomial(order or ring.order)
    cof = [ring.zero() for _ in prev]
    for (j, idx), c in payload.items():
        b = pieces.piece(e + a.degree() - prev[j].degree())[idx]
        cof[j] = cof[j] - b.scale(c)
    return ProbeStep(i, w, e, lm, cof)


def regular_sequence_probe(elements, algebra, window: int | None = None, order=None,
                           identity=None, named_witness=None) -> ProbeReport:
    """Search for zero divisors modulo initial segments of ``elements`` inside ``algebra``.

    ``algebra`` is a Representation (its invariant ring) or a generator list.
    ``identity`` is an optional (polynomial, ideal generators) pair whose
    normal form is reported; ``named_witness`` an optional (index, w) pair
    checked with check_witness.
    """
    pieces = _Pieces(algebra)
    for a in elements:
        if not pieces.contains(a):
            raise ModqError(f"{a} is not in the algebra")
    p = algebra.p if isinstance(algebra, Representation) else 0
    if window is None:
        window = max(a.degree() for a in elements) + p
    steps = []
    verdict = "regular"
    for i in range(1, len(elements)):
        found = None
        for e in range(window + 1):
            found = find_zero_divisor(elements, i, pieces, e, order)
            if found:
                w, lm, cof = found
                steps.append(ProbeStep(i, w, e, lm, cof))
                break
        if found:
            verdict = "not-regular"
            break
        steps.append(ProbeStep(i, None, None, None, None))
        verdict = "inconclusive"
    ident = None
    if identity is not None:
        f, gens = identity
        gb = groebner_basis(Ideal(list(gens), f.ring), order or f.ring.order)
        nf = normal_form(f, gb)
        ident = {"normal_form": str(nf), "holds": nf.is_zero()}
    named = None
    if named_witness is not None:
        named = check_witness(elements, named_witness[0], named_witness[1], pieces, order)
        if named is not None:
            verdict = "not-regular"
    return ProbeReport(verdict, steps, window, ident, named)


def jordan4_ring(p: int, field=None):
    from .field import make_field
    field = field or make_field(p)
    order = MonomialOrder("grlex", 4, priority=(1, 0, 2, 3))
    return PolyRing(field, ["x1", "x2", "x3", "x4"], order)


def jordan4_invariants(ring, p: int):
    """l1, l2, l3 and N(x2) in the four-dimensional Jordan-block ring."""
    x1, x2, x3, x4 = ring.gens()
    l1 = x1
    l2 = x2 ** 2 - x1 * (x2 + x3.scale(2))
    l3 = x2 ** 3 + x1 ** 2 * (x4.scale(3) - x2) - (x1 * x2 * x3).scale(3)
    n = x2 ** p - x1 ** (p - 1) * x2
    return l1, l2, l3, n


def jordan4_probe(p: int = 5, sign: str = "+", window: int | None = None) -> ProbeReport:
    """The V_4^+ (or tilde V_4^-) regular-sequence obstruction."""
    ring = jordan4_ring(p)
    rep = Representation(p, p, [IndecomposableSpec(CHARP, "V", 4, sign)],
                         names=ring.names, order=ring.order)
    l1, l2, l3, n = jordan4_invariants(ring, p)
    half = (p + 3) // 2
    if sign == "+":
        elements = [l1, l2, n]
        identity = (l3 * n - l2 ** half, [l1])
        named = (2, l3)
    else:
        elements = [l1 * l1, l2, l1 * n]
        identity = ((l1 * l3) * (l1 * n) - l2 ** half * (l1 * l1), [l1 * l1])
        named = (2, l1 * l3)
    return regular_sequence_probe(elements, rep, window, ring.order, identity, named)


# ---------- summary ----------

@dataclass
class StructureReport:
    cm_defect: int
    is_cm: bool
    presentation_class: str | None
    gorenstein: Verdict
    bireflection_ok: bool

    def to_json(self):
        return {"cm_defect": self.cm_defect, "is_cm": self.is_cm,
                "presentation_class": self.presentation_class,
                "gorenstein": self.gorenstein.to_json(), "bireflection_ok": self.bireflection_ok}


def structure_report(rep: Representation, pres: AlgebraPresentation | None = None) -> StructureReport:
    d = cm_defect(rep)
    return StructureReport(d, d == 0, pres.presentation_class if pres is not None else None,
                           gorenstein_verdict(rep, pres), structure_predicates(rep).is_bireflection_group)
