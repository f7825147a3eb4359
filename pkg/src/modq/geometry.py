"""Singular loci, point counts over finite fields and motivic class fitting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import BudgetExceeded, InvalidField, NotPolynomialCount, UnsupportedShape
from .field import make_field
from .groebner import Ideal
from .poly import MultiPoly, PolyRing, parse_poly

DEFAULT_POINT_CAP = 2 ** 24


class AffineVarietyPresentation:
    """Zero set of relations with prime-field coefficients in named affine coordinates."""

    def __init__(self, names, relations, weights=None, characteristic=None):
        names = list(names)
        rels = [r for r in relations]
        if rels:
            characteristic = rels[0].field.p
        if characteristic is None:
            raise ValueError("characteristic needed for an empty relation list")
        self.characteristic = characteristic
        self.ring = PolyRing(make_field(characteristic), names)
        self.relations = [self._to_prime(r) for r in rels]
        if any(r.is_zero() for r in self.relations):
            raise ValueError("relations must be nonzero")
        self.weights = list(weights) if weights is not None else [1] * len(names)

    def _to_prime(self, r):
        p = self.characteristic
        if r.field.p != p:
            raise InvalidField("relations over different characteristics")
        if any(c >= p for c in r.terms.values()):
            raise InvalidField(f"relation {r} has coefficients outside the prime field")
        return MultiPoly(self.ring, dict(r.terms)) if len(r.ring.names) == self.ring.nvars else r.map_ring(self.ring)

    @property
    def names(self):
        return list(self.ring.names)

    @property
    def dimension(self):
        return self.ring.nvars

    @classmethod
    def from_presentation(cls, pres):
        return cls(pres.ring.names, list(pres.relations), pres.degrees, pres.ring.field.p)

    @classmethod
    def from_json(cls, data):
        """Accepts the presentation dump of the invariants module."""
        from .field import parse_field
        field = parse_field(data["field"])
        prime = make_field(field.p)
        names = data["variables"]
        ring = PolyRing(prime, names)
        rels = [parse_poly(r["poly"], ring) for r in data.get("relations", [])]
        weights = [g["degree"] for g in data.get("generators", [])] or None
        return cls(names, rels, weights, field.p)

    def to_json(self):
        return {"variables": self.names, "characteristic": self.characteristic,
                "relations": [str(r) for r in self.relations], "weights": self.weights}


def _compile(poly):
    return [(c, [(i, k) for i, k in enumerate(e) if k]) for e, c in poly.terms.items()]


def _evaluator(field):
    add, mul = field.add, field.mul
    elems = list(field.elements())
    table = {}

    def power(a, k):
        key = (a, k)
        v = table.get(key)
        if v is None:
            v = field.pow(a, k)
            table[key] = v
        return v

    def ev(compiled, point):
        total = 0
        for c, factors in compiled:
            v = c
            for i, k in factors:
                v = mul(v, power(point[i], k))
                if not v:
                    break
            if v:
                total = add(total, v)
        return total

    return elems, ev


def solve(polys, nvars, q, cap=DEFAULT_POINT_CAP):
    """All F_q points where every polynomial vanishes (exhaustive)."""
    if q ** nvars > cap:
        raise BudgetExceeded(f"{q}^{nvars} points exceed the enumeration cap {cap}",
                             partial={"q": q, "dimension": nvars})
    p = polys[0].field.p if polys else None
    field = _field_of_size(q, p)
    elems, ev = _evaluator(field)
    compiled = [_compile(f) for f in polys]
    out = []
    for pt in product(elems, repeat=nvars):
        if all(ev(c, pt) == 0 for c in compiled):
            out.append(pt)
    return field, out


def _field_of_size(q, p=None):
    from .field import field_of_size
    field = field_of_size(q)
    if p is not None and field.p != p:
        raise InvalidField(f"q = {q} is not a power of the characteristic {p}")
    return field


def count_points(pres: AffineVarietyPresentation, q: int, cap: int = DEFAULT_POINT_CAP) -> int:
    field = _field_of_size(q, pres.characteristic)
    if not pres.relations:
        if q ** pres.dimension > cap:
            raise BudgetExceeded(f"{q}^{pres.dimension} points exceed the enumeration cap {cap}")
        return q ** pres.dimension
    return len(solve(pres.relations, pres.dimension, field.q, cap)[1])


def _det(mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        if mat[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else mat[0][0].ring.zero()


def jacobian_ideal(pres: AffineVarietyPresentation, codim: int | None = None) -> Ideal:
    c = len(pres.relations) if codim is None else codim
    if c > len(pres.relations):
        raise UnsupportedShape(f"expected codimension {c} exceeds the {len(pres.relations)} relations")
    ring = pres.ring
    gens = list(pres.relations)
    if c:
        jac = [[r.derivative(v) for v in range(ring.nvars)] for r in pres.relations]
        for rows in combinations(range(len(jac)), c):
            for cols in combinations(range(ring.nvars), c):
                m = _det([[jac[i][j] for j in cols] for i in rows])
                if not m.is_zero() and m not in gens:
                    gens.append(m)
    return Ideal(gens, ring)


@dataclass
class SingularLocus:
    ideal: Ideal
    q: int | None
    points: list

    def to_json(self, field=None):
        out = {"ideal": [str(g) for g in self.ideal.generators], "q": self.q}
        if self.q is not None:
            fmt = field.format if field is not None else str
            out["points"] = [[fmt(v) for v in pt] for pt in self.points]
            out["count"] = len(self.points)
        return out


def singular_locus(pres: AffineVarietyPresentation, q: int | None = None, codim: int | None = None,
                   cap: int = DEFAULT_POINT_CAP) -> SingularLocus:
    """Jacobian ideal and, when q is given, its F_q points."""
    ideal = jacobian_ideal(pres, codim)
    if not pres.relations:
        return SingularLocus(ideal, q, [])
    points = []
    if q is not None:
        points = solve(ideal.generators, pres.dimension, q, cap)[1]
    return SingularLocus(ideal, q, points)


# ---------- motives ----------

@dataclass(frozen=True)
class MotiveClass:
    """Integer polynomial in L, coefficients from the constant term up."""

    coefficients: tuple

    def evaluate(self, L):
        return sum(c * L ** i for i, c in enumerate(self.coefficients))

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return MotiveClass.of([x + y for x, y in zip(a, b)])

    @classmethod
    def of(cls, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))

    def __str__(self):
        parts = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            mono = "" if i == 0 else ("L" if i == 1 else f"L^{i}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self):
        return {"coefficients": list(self.coefficients), "class": str(self)}


def _lagrange(points):
    """Coefficients (low to high) of the interpolating polynomial, as Fractions."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


def fit_motive_class(counts) -> MotiveClass:
    """Lowest-degree integer polynomial in q matching every (q, N) pair."""
    pts = sorted({(int(q), int(n)) for q, n in (counts.items() if isinstance(counts, dict) else counts)})
    if len({q for q, _ in pts}) != len(pts) or not pts:
        raise NotPolynomialCount("need distinct field sizes with one count each")
    for d in range(len(pts)):
        coeffs = _lagrange(pts[:d + 1])
        if all(sum(c * q ** i for i, c in enumerate(coeffs)) == n for q, n in pts):
            if any(c.denominator != 1 for c in coeffs):
                raise NotPolynomialCount(f"interpolant has non-integer coefficients {coeffs}")
            return MotiveClass.of([int(c) for c in coeffs])
    raise NotPolynomialCount("no polynomial fits the counts")


@dataclass
class McKayReport:
    p: int
    counts: dict
    class_of_X: MotiveClass
    class_of_Y: MotiveClass
    euler_Y: int
    conj_classes: int
    match: bool

    def to_json(self):
        return {"p": self.p, "counts": {str(q): n for q, n in self.counts.items()},
                "class_of_X": self.class_of_X.to_json(), "class_of_Y": self.class_of_Y.to_json(),
                "chi_Y": self.euler_Y, "conj_classes": self.conj_classes, "match": self.match}


def mckay_report(p: int = 3, qs=(2, 4, 8, 16), k: int = 1) -> McKayReport:
    """Class of the W_k quotient, the resolution class [X] - 1 + 2(L+1) - 1 and the Euler check."""
    from .invariants import presentation
    from .rep import build_representation
    rep = build_representation(p, 2, f"W{k}")
    pres = presentation(rep)
    if pres.presentation_class != "hypersurface":
        raise UnsupportedShape(f"W{k} quotient for p = {p} is {pres.presentation_class}, not a hypersurface")
    var = AffineVarietyPresentation.from_presentation(pres)
    counts = {q: count_points(var, q) for q in qs}
    cx = fit_motive_class(counts)
    # [X \ {0}] + [E1 u E2] with two P^1 meeting in a point
    cy = cx + MotiveClass.of([-1]) + MotiveClass.of([2, 2]) + MotiveClass.of([-1])
    chi = cy.evaluate(1)
    conj = 2 * p
    return McKayReport(p, counts, cx, cy, chi, conj, chi == conj)
