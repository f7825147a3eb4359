"""Invariant spaces, minimal generators, presentations, norms and Hilbert series."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import comb, gcd

from . import linalg
from .errors import InvalidWeight, ObstructionFound
from .field import make_field
from .groebner import (Ideal, kernel_groebner_basis, kernel_of_algebra_map,
                       presentation_ring, same_subalgebra)
from .poly import MultiPoly, PolyRing


# ---------- graded pieces ----------

def _echelon_polys(ring, polys):
    """Reduced echelon basis (monic, distinct leading monomials, descending)."""
    ech = linalg.Echelon(ring.field, key=ring.order.key)
    for f in polys:
        ech.add(f.terms)
    return [MultiPoly(ring, row) for row in ech.basis()]


def invariant_space(rep, d: int) -> list:
    """Basis of the degree-d invariants: the kernel of sigma* - 1 on degree-d forms."""
    cache = rep._invariant_cache
    if d in cache:
        return cache[d]
    ring = rep.ring
    field = ring.field
    monos = ring.monomials_of_degree(d)
    vectors = []
    for e in monos:
        img = dict(rep.action.monomial(e).terms)
        img[e] = field.sub(img.get(e, 0), 1)
        if not img[e]:
            del img[e]
        vectors.append(img)
    combos = linalg.kernel(field, vectors)
    polys = [MultiPoly(ring, {monos[j]: c for j, c in combo.items()}) for combo in combos]
    basis = _echelon_polys(ring, polys)
    cache[d] = basis
    return basis


def invariant_dims(rep, D: int) -> list:
    return [len(invariant_space(rep, d)) for d in range(D + 1)]


def default_degree_bound(rep) -> int:
    return 2 * rep.group_order


@dataclass
class GeneratorSet:
    generators: list
    degrees: list
    degree_bound: int = 0
    warning: bool = False
    # per degree: (dim of products of lower generators, number of new generators, dim of invariants)
    certificate: dict = dc_field(default_factory=dict)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_json(self):
        return {"generators": [{"poly": str(g), "degree": d} for g, d in zip(self.generators, self.degrees)],
                "degree_bound": self.degree_bound, "warning": self.warning}


class _SubalgebraSpans:
    """Degree-wise echelon spans of the algebra generated by a growing generator list."""

    def __init__(self, ring):
        self.ring = ring
        self.gens = []
        self.spans = {0: [ring.one()]}

    def span(self, d):
        if d in self.spans:
            return self.spans[d]
        prods = []
        for g in self.gens:
            e = g.degree()
            if e <= d:
                prods.extend(g * a for a in self.span(d - e))
        basis = _echelon_polys(self.ring, prods)
        self.spans[d] = basis
        return basis

    def add_generators(self, d, new):
        self.gens.extend(new)
        # the degree-d span now includes the new elements; higher spans are rebuilt lazily
        self.spans[d] = _echelon_polys(self.ring, self.spans[d] + list(new))
        for k in [k for k in self.spans if k > d]:
            del self.spans[k]


def _new_generators(ring, span, invariants):
    base = linalg.Echelon(ring.field, key=ring.order.key)
    for f in span:
        base.add(f.terms)
    fresh = linalg.Echelon(ring.field, key=ring.order.key)
    for f in invariants:
        rem, _ = base.reduce(f.terms)
        if rem:
            fresh.add(rem)
    return [MultiPoly(ring, row) for row in fresh.basis()]


def minimal_generators(rep, degree_bound: int | None = None) -> GeneratorSet:
    """Degree-ascending sweep for a minimal generating set up to ``degree_bound``."""
    D = degree_bound if degree_bound is not None else default_degree_bound(rep)
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    ring = rep.ring
    spans = _SubalgebraSpans(ring)
    gens, degs, cert = [], [], {}
    warning = False
    for d in range(1, D + 1):
        inv = invariant_space(rep, d)
        span = spans.span(d)
        new = _new_generators(ring, span, inv)
        cert[d] = (len(span), len(new), len(inv))
        assert len(span) + len(new) == len(inv), "products escaped the invariant space"
        for g in new:
            assert rep.act(g) == g, "generator is not invariant"
        if new:
            spans.add_generators(d, new)
            gens.extend(new)
            degs.extend([d] * len(new))
            if d == D:
                warning = True
    return GeneratorSet(gens, degs, D, warning, cert)


# ---------- presentations ----------

def presentation_class(n_generators: int, n_relations: int, ambient_dim: int) -> str:
    if n_relations == 0:
        return "polynomial"
    if n_relations == 1 and n_generators == ambient_dim + 1:
        return "hypersurface"
    if n_relations == n_generators - ambient_dim:
        return "ci"
    return "other"


@dataclass
class AlgebraPresentation:
    generators: GeneratorSet
    relations: Ideal
    ambient_dim: int

    @property
    def ring(self):
        return self.relations.ring

    @property
    def degrees(self):
        return list(self.generators.degrees)

    @property
    def relation_degrees(self):
        order = self.ring.order
        return [r.degree(order.weights) for r in self.relations]

    @property
    def presentation_class(self):
        return presentation_class(len(self.generators), len(self.relations), self.ambient_dim)

    def check(self):
        """Every relation vanishes on the generators."""
        gens = self.generators.generators
        return all(r.substitute(gens, gens[0].ring).is_zero() for r in self.relations)

    def to_json(self):
        return {"generators": [{"poly": str(g), "degree": d}
                               for g, d in zip(self.generators.generators, self.generators.degrees)],
                "relations": [{"poly": str(r), "weighted_degree": w}
                              for r, w in zip(self.relations, self.relation_degrees)],
                "class": self.presentation_class,
                "ambient_dim": self.ambient_dim,
                "field": str(self.ring.field),
                "variables": list(self.ring.names),
                "warning": self.generators.warning}


def presentation_from_generators(gens: GeneratorSet, ambient_dim: int, names=None) -> AlgebraPresentation:
    rels = kernel_of_algebra_map(gens.generators, names)
    return AlgebraPresentation(gens, rels, ambient_dim)


def presentation(rep, degree_bound: int | None = None, names=None) -> AlgebraPresentation:
    gens = minimal_generators(rep, degree_bound)
    return presentation_from_generators(gens, rep.dimension, names)


# ---------- norms ----------

def norm(rep, subgroup_index: int, variable) -> MultiPoly:
    """Product of the orbit of a variable under <sigma^s>, taken in power order."""
    ring = rep.ring
    v = ring.var(variable)
    orbit = []
    s = subgroup_index % rep.group_order
    e = 0
    while True:
        img = rep.act(v, e) if e else v
        if img in orbit:
            break
        orbit.append(img)
        e += s
        if e % rep.group_order == 0:
            break
    out = ring.one()
    for f in orbit:
        out = out * f
    return out


# ---------- diagonal actions ----------

@dataclass
class HilbertBasisDiagonal:
    p: int
    i: int
    j: int
    pairs: list

    @property
    def m(self):
        return len(self.pairs)

    @property
    def degrees(self):
        return [a + b for a, b in self.pairs]

    def monomials(self, ring):
        return [ring.monomial((a, b)) for a, b in self.pairs]

    def to_json(self):
        return {"p": self.p, "i": self.i, "j": self.j, "pairs": [list(t) for t in self.pairs]}


def hilbert_basis_diagonal(p: int, i: int, j: int) -> HilbertBasisDiagonal:
    """Minimal exponent pairs (a, b) with i*a + j*b = 0 mod p."""
    for w in (i, j):
        if not 1 <= w <= p - 1:
            raise InvalidWeight(f"weight {w} outside 1..{p - 1}")
    cands = [(a, b) for a in range(p + 1) for b in range(p + 1)
             if (a or b) and (i * a + j * b) % p == 0]
    cset = set(cands)

    def reducible(a, b):
        return any((c, d) != (a, b) and c <= a and d <= b for c, d in cset)

    pairs = sorted((t for t in cands if not reducible(*t)), reverse=True)
    return HilbertBasisDiagonal(p, i, j, pairs)


def _factor(target, gens):
    """Exponents e with sum e_s * gens[s] == target; largest exponents first."""
    if not gens:
        return [] if target == (0, 0) else None
    (a, b), rest = gens[0], gens[1:]
    top = min(target[0] // a if a else target[1] + 1, target[1] // b if b else target[0] + 1)
    for e in range(top, -1, -1):
        sub = _factor((target[0] - e * a, target[1] - e * b), rest)
        if sub is not None:
            return [e] + sub
    return None


def diagonal_binomials(basis: HilbertBasisDiagonal) -> list:
    """Exponent pairs (lhs, rhs) of R_kt: U_k U_t = prod U_s^e_s for t - k >= 2."""
    m = basis.m
    pairs = basis.pairs
    out = []
    for k in range(m):
        for t in range(k + 2, m):
            target = (pairs[k][0] + pairs[t][0], pairs[k][1] + pairs[t][1])
            ex = _factor(target, pairs[k + 1:t])
            if ex is None:
                raise ObstructionFound(f"U{k + 1}U{t + 1} does not factor over intermediate generators")
            lhs = [0] * m
            lhs[k] += 1
            lhs[t] += 1
            rhs = [0] * m
            for s, e in enumerate(ex):
                rhs[k + 1 + s] = e
            out.append((tuple(lhs), tuple(rhs)))
    assert len(out) == comb(m - 1, 2)
    return out


def format_binomial(lhs, rhs, names=None) -> str:
    """Characteristic-free text "U1*U3 - U2^2" for an exponent pair."""
    names = names or [f"U{i + 1}" for i in range(len(lhs))]

    def mono(e):
        return "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k) or "1"
    return f"{mono(lhs)} - {mono(rhs)}"


def diagonal_relations(basis: HilbertBasisDiagonal, field=None, names=None) -> list:
    """The binomial relations as polynomials, checked to vanish on the monomials."""
    field = field or make_field(2)
    ring = presentation_ring(field, basis.degrees, names)
    rels = [ring.monomial(a) - ring.monomial(b) for a, b in diagonal_binomials(basis)]
    xring = PolyRing(field, ["x", "y"])
    images = basis.monomials(xring)
    for r in rels:
        assert r.substitute(images, xring).is_zero()
    return rels


def monomial_invariant_oracle(rep, bound: int) -> list:
    """Exponent pairs of indecomposable invariant monomials of degree <= bound (2-dim diagonal rep)."""
    ring = rep.ring
    inv = set()
    for d in range(1, bound + 1):
        for e in ring.monomials_of_degree(d):
            m = ring.monomial(e)
            if rep.act(m) == m:
                inv.add(e)
    return sorted((e for e in inv
                   if not any(f != e and all(x <= y for x, y in zip(f, e)) for f in inv)), reverse=True)


def wk_route_generators(rep, index: int | None = None) -> list:
    """Invariants of W_k via F[W_k]^H = F[h1, h2] (h1 = x, h2 = H-norm of y) and a diagonal C_p step."""
    if rep.regime != "char2_podd" or len(rep.summands) != 1 or rep.summands[0].kind != "W":
        raise ValueError("the two-step route applies to a single W_k summand")
    k = rep.summands[0].index if index is None else index
    ring = rep.ring
    h1, h2 = ring.var(0), norm(rep, rep.p, 1)
    if k % rep.p == 0:
        return [h1, h2]
    hb = hilbert_basis_diagonal(rep.p, 1, 2)
    return [h1 ** a * h2 ** b for a, b in hb.pairs]


# ---------- Hilbert series ----------

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _poly_trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def monomial_ideal_numerator(gens, weights) -> list:
    """Numerator K(t) of the Hilbert series K(t)/prod(1 - t^w) of k[U]/(gens)."""
    gens = _minimal_monomials(gens)
    if not gens:
        return [1]
    m, rest = gens[-1], gens[:-1]
    deg = sum(w * e for w, e in zip(weights, m))
    colon = [tuple(max(a - b, 0) for a, b in zip(g, m)) for g in rest]
    shifted = [0] * deg + monomial_ideal_numerator(colon, weights)
    return _poly_sub(monomial_ideal_numerator(rest, weights), shifted)


def _minimal_monomials(gens):
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def series_coefficients(numerator, degrees, D):
    """Coefficients up to t^D of numerator / prod(1 - t^d)."""
    coeffs = (list(numerator) + [0] * (D + 1))[:D + 1]
    for d in degrees:
        for n in range(d, D + 1):
            coeffs[n] += coeffs[n - d]
    return coeffs


def _divide_one_minus(num, d):
    """num / (1 - t^d) if exact, else None."""
    num = list(num)
    q = [0] * max(len(num) - d, 1)
    # num = (1 - t^d) q  =>  q_n = num_n + q_{n-d}
    for n in range(len(q)):
        q[n] = num[n] + (q[n - d] if n >= d else 0)
    if _poly_trim(_poly_mul([1] + [0] * (d - 1) + [-1], q)) == _poly_trim(num):
        return _poly_trim(q)
    return None


def _root_one_multiplicity(num):
    mult = 0
    while any(num):
        q = _divide_one_minus(num, 1)
        if q is None:
            break
        num = q
        mult += 1
    return mult


@dataclass
class HilbertData:
    dims: list
    series_from_presentation: list
    numerator: list
    denominator_degrees: list
    h_vector: list
    h_step: int
    krull_dim: int
    first_mismatch: int | None

    @property
    def consistent(self):
        return self.first_mismatch is None

    @property
    def h_symmetric(self):
        h = list(self.h_vector)
        return h == h[::-1] or h == [-c for c in h[::-1]]

    def to_json(self):
        return {"dims": self.dims, "series": self.series_from_presentation,
                "numerator": self.numerator, "denominator_degrees": self.denominator_degrees,
                "h_vector": self.h_vector, "krull_dim": self.krull_dim,
                "consistent": self.consistent, "first_mismatch": self.first_mismatch}


def presentation_hilbert(pres: AlgebraPresentation):
    """(numerator, degrees) of the Hilbert series of U-ring / relations."""
    degrees = pres.degrees
    if len(pres.relations):
        gb = kernel_groebner_basis(pres.generators.generators, pres.ring.names)
        lms = gb.leading_monomials()
    else:
        lms = []
    return monomial_ideal_numerator(lms, degrees), degrees


def h_vector(numerator, degrees, krull_dim):
    """Cancel (1 - t^d) factors down to ``krull_dim`` denominators; return (h, step, remaining degrees)."""
    num = list(numerator)
    remaining = sorted(degrees, reverse=True)
    i = 0
    while len(remaining) > krull_dim and i < len(remaining):
        q = _divide_one_minus(num, remaining[i])
        if q is not None:
            num = q
            remaining.pop(i)
        else:
            i += 1
    step = 0
    for d in remaining:
        step = gcd(step, d)
    for n, c in enumerate(num):
        if c:
            step = gcd(step, n)
    step = step or 1
    h = _poly_trim(num[::step])
    return h, step, sorted(remaining)


def hilbert_series_check(pres: AlgebraPresentation, rep, D: int | None = None) -> HilbertData:
    D = default_degree_bound(rep) if D is None else D
    numerator, degrees = presentation_hilbert(pres)
    series = series_coefficients(numerator, degrees, D)
    dims = invariant_dims(rep, D)
    mismatch = next((d for d in range(D + 1) if dims[d] != series[d]), None)
    krull = len(degrees) - _root_one_multiplicity(numerator)
    h, step, remaining = h_vector(numerator, degrees, krull)
    return HilbertData(dims, series, numerator, degrees, h, step, krull, mismatch)


def polynomial_algebra_series(degrees, D):
    return series_coefficients([1], degrees, D)


def matches_generators(gens, reference) -> bool:
    """Two-sided subalgebra membership between two generator lists."""
    return same_subalgebra(list(gens), list(reference))


def degree_products(gens, d):
    """All products of generators of total degree d (for brute-force cross-checks)."""
    degs = [g.degree() for g in gens]
    out = []
    for exps in product(*[range(d // e + 1) for e in degs]):
        if sum(a * e for a, e in zip(exps, degs)) == d:
            f = gens[0].ring.one()
            for g, a in zip(gens, exps):
                if a:
                    f = f * g ** a
            out.append(f)
    return out
