"""Buchberger Groebner bases, normal forms, elimination and subalgebra membership.

Inside the engine a monomial is one Python int: the key rows of the
monomial order packed into 16-bit fields, most significant row first.
Comparing ints then compares monomials, multiplying monomials adds ints,
and divisibility is a single guarded subtraction.
"""

from __future__ import annotations

from collections import namedtuple
from functools import lru_cache

from .errors import BudgetExceeded, RingMismatch
from .poly import MonomialOrder, MultiPoly, PolyRing

FIELD_BITS = 16
DEFAULT_MAX_PAIRS = 200_000


class _Packing:
    def __init__(self, order):
        self.order = order
        n = order.nvars
        rows = order.rows
        nf = len(rows)
        self.rows = rows
        self.shifts = [(nf - 1 - r) * FIELD_BITS for r in range(nf)]
        self.guard = sum(1 << (s + FIELD_BITS - 1) for s in self.shifts)
        self.mask = (1 << FIELD_BITS) - 1
        self.var_shift = [self.shifts[order.unit_row[i]] for i in range(n)]
        self.weights = order.weights
        self.limit = 1 << (FIELD_BITS - 1)

    def pack(self, exps):
        v = 0
        for r, row in enumerate(self.rows):
            k = sum(w * e for w, e in zip(row, exps))
            if k >= self.limit:
                raise OverflowError("monomial degree too large for packed representation")
            v += k << self.shifts[r]
        return v

    def exps(self, m):
        mask = self.mask
        return tuple((m >> s) & mask for s in self.var_shift)

    def divides(self, a, b):
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a, b):
        return self.pack(tuple(max(x, y) for x, y in zip(self.exps(a), self.exps(b))))

    def coprime(self, a, b):
        return not any(x and y for x, y in zip(self.exps(a), self.exps(b)))

    def degree(self, m):
        return sum(w * e for w, e in zip(self.weights, self.exps(m)))


class _GP:
    __slots__ = ("lm", "terms", "sugar")

    def __init__(self, terms, sugar, lm=None):
        self.terms = terms
        self.lm = max(terms) if lm is None else lm
        self.sugar = sugar


def _reduce(field, f, basis, pk, full=True):
    """Remainder of f (packed dict) on division by monic basis polys."""
    f = dict(f)
    rem = {}
    guard = pk.guard
    prime = field.k == 1
    p = field.p
    while f:
        m = max(f)
        c = f[m]
        for g in basis:
            glm = g.lm
            if ((m | guard) - glm) & guard == guard:
                q = m - glm
                if prime:
                    for gm, gc in g.terms.items():
                        k = gm + q
                        v = (f.get(k, 0) - c * gc) % p
                        if v:
                            f[k] = v
                        else:
                            f.pop(k, None)
                else:
                    for gm, gc in g.terms.items():
                        k = gm + q
                        v = field.sub(f.get(k, 0), field.mul(c, gc))
                        if v:
                            f[k] = v
                        else:
                            f.pop(k, None)
                break
        else:
            rem[m] = f.pop(m)
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(field, terms):
    lm = max(terms)
    lc = terms[lm]
    if lc == 1:
        return terms
    inv = field.inv(lc)
    return {m: field.mul(inv, c) for m, c in terms.items()}


def _spoly(field, f, g, lcm):
    qf = lcm - f.lm
    qg = lcm - g.lm
    out = {m + qf: c for m, c in f.terms.items()}
    for m, c in g.terms.items():
        k = m + qg
        v = field.sub(out.get(k, 0), c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _buchberger(field, pk, inputs, max_pairs):
    polys = []
    active = []
    pairs = {}  # (i, j) -> (sugar, lcm)

    def update(h):
        lmh = polys[h].lm
        cands = []
        for g in active:
            lcm = pk.lcm(lmh, polys[g].lm)
            cands.append((g, lcm))
        kept = []
        for idx, (g, lcm) in enumerate(cands):
            if pk.coprime(lmh, polys[g].lm):
                kept.append((g, lcm))
                continue
            redundant = any(pk.divides(l2, lcm) for _, l2 in cands[idx + 1:]) or any(
                pk.divides(l2, lcm) for _, l2 in kept)
            if not redundant:
                kept.append((g, lcm))
        new_pairs = [(g, lcm) for g, lcm in kept if not pk.coprime(lmh, polys[g].lm)]
        for (a, b), (s, lcm) in list(pairs.items()):
            if pk.divides(lmh, lcm) and pk.lcm(polys[a].lm, lmh) != lcm and pk.lcm(lmh, polys[b].lm) != lcm:
                del pairs[(a, b)]
        hs = polys[h]
        for g, lcm in new_pairs:
            gs = polys[g]
            sugar = max(hs.sugar + pk.degree(lcm) - pk.degree(hs.lm),
                        gs.sugar + pk.degree(lcm) - pk.degree(gs.lm))
            pairs[(g, h)] = (sugar, lcm)
        active[:] = [g for g in active if not pk.divides(lmh, polys[g].lm)] + [h]

    for terms, sugar in inputs:
        basis = [polys[i] for i in active]
        r = _reduce(field, terms, basis, pk)
        if not r:
            continue
        polys.append(_GP(_monic(field, r), sugar))
        update(len(polys) - 1)

    processed = 0
    while pairs:
        key = min(pairs, key=lambda k: (pairs[k][0], pairs[k][1]))
        sugar, lcm = pairs.pop(key)
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"S-pair budget of {max_pairs} exhausted",
                                 partial={"basis_size": len(active), "pending_pairs": len(pairs)})
        s = _spoly(field, polys[key[0]], polys[key[1]], lcm)
        if not s:
            continue
        r = _reduce(field, s, [polys[i] for i in active], pk)
        if not r:
            continue
        polys.append(_GP(_monic(field, r), sugar))
        update(len(polys) - 1)

    basis = [polys[i] for i in active]
    # interreduce tails; leading monomials are already minimal
    out = []
    for i, g in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        tail = dict(g.terms)
        lc = tail.pop(g.lm)
        red = _reduce(field, tail, others, pk)
        red[g.lm] = lc
        out.append(_GP(red, g.sugar, g.lm))
    out.sort(key=lambda g: g.lm)
    return out


class Ideal:
    """An ideal given by generators in one ring."""

    def __init__(self, generators, ring=None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("empty ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("ideal generators live in different rings")
        self.ring = ring
        self.generators = gens

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def to_json(self):
        return {"ring": {"field": str(self.ring.field), "variables": list(self.ring.names)},
                "generators": [str(g) for g in self.generators]}


class GroebnerBasis:
    """A Groebner basis with respect to ``order``; iteration order is ascending leading monomial."""

    def __init__(self, ring, order, basis, reduced=True, _packed=None, _packing=None):
        self.ring = ring
        self.order = order
        self.basis = basis
        self.reduced = reduced
        self._packed = _packed
        self._pk = _packing

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.basis]

    def is_unit_ideal(self):
        return any(sum(m) == 0 for m in self.leading_monomials())

    def to_json(self):
        return {"ring": {"field": str(self.ring.field), "variables": list(self.ring.names)},
                "order": self.order.kind,
                "basis": [str(g) for g in self.basis]}


def _to_packed(f, pk):
    return {pk.pack(e): c for e, c in f.terms.items()}


def _from_packed(ring, terms, pk):
    return MultiPoly(ring, {pk.exps(m): c for m, c in terms.items()})


def set_max_pairs(n):
    """Change the default S-pair budget used when ``max_pairs`` is not given."""
    global DEFAULT_MAX_PAIRS
    DEFAULT_MAX_PAIRS = int(n)


def groebner_basis(ideal, order=None, max_pairs=None):
    """Reduced Groebner basis of ``ideal`` (an Ideal or a list of polynomials)."""
    if max_pairs is None:
        max_pairs = DEFAULT_MAX_PAIRS
    if not isinstance(ideal, Ideal):
        ideal = Ideal(ideal)
    ring = ideal.ring
    order = order or ring.order
    if order.nvars != ring.nvars:
        raise RingMismatch("order does not match the ring")
    pk = _Packing(order)
    field = ring.field
    inputs = []
    for g in ideal.generators:
        if g.is_zero():
            continue
        inputs.append((_to_packed(g, pk), max(order.degree(e) for e in g.terms)))
    inputs.sort(key=lambda t: (t[1], max(t[0])))
    packed = _buchberger(field, pk, inputs, max_pairs) if inputs else []
    basis = [_from_packed(ring, g.terms, pk) for g in packed]
    return GroebnerBasis(ring, order, basis, True, packed, pk)


def normal_form(f, G):
    """Unique remainder of f modulo the Groebner basis G."""
    if f.ring != G.ring:
        raise RingMismatch(f"{f.ring} vs {G.ring}")
    if f.is_zero() or not G.basis:
        return f
    pk = G._pk or _Packing(G.order)
    packed = G._packed or [_GP(_to_packed(g.monic(G.order), pk), 0) for g in G.basis]
    return _from_packed(G.ring, _reduce(G.ring.field, _to_packed(f, pk), packed, pk), pk)


def s_polynomial(f, g, order):
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    field = f.field
    cf = field.inv(f.terms[lf])
    cg = field.inv(g.terms[lg])
    return (f.mul_term(tuple(a - b for a, b in zip(lcm, lf)), cf)
            - g.mul_term(tuple(a - b for a, b in zip(lcm, lg)), cg))


def is_groebner(G):
    """Buchberger criterion: every S-polynomial reduces to zero."""
    basis = G.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], G.order), G).is_zero():
                return False
    return True


def ideal_contains(G, f):
    return normal_form(f, G).is_zero()


def ideal_equal(a, b, order=None):
    """Equality of two ideals in the same ring via reduced Groebner bases."""
    ga = groebner_basis(a, order)
    gb = groebner_basis(b, order or ga.order)
    return [g.terms for g in ga.basis] == [g.terms for g in gb.basis]


# ---------- elimination ----------

def presentation_ring(field, degrees, names=None):
    """Polynomial ring on presentation variables weighted by generator degrees."""
    names = list(names) if names is not None else [f"U{i + 1}" for i in range(len(degrees))]
    return PolyRing(field, names, MonomialOrder("grlex", len(names), weights=degrees))


class _Elimination:
    """Groebner basis of (U_i - f_i) for an elimination order x >> U."""

    def __init__(self, images, names=None):
        images = list(images)
        if not images:
            raise ValueError("need at least one image")
        xring = images[0].ring
        for f in images:
            if f.ring != xring:
                raise RingMismatch("images live in different rings")
            if f.is_zero():
                raise ValueError("zero image")
        self.images = images
        self.xring = xring
        n, m = xring.nvars, len(images)
        homogeneous = all(f.is_homogeneous() for f in images)
        self.homogeneous = homogeneous
        degrees = [f.degree() for f in images]
        self.degrees = degrees
        self.uring = presentation_ring(xring.field, degrees, names)
        allnames = list(xring.names) + list(self.uring.names)
        if len(set(allnames)) != len(allnames):
            raise ValueError("presentation names clash with ring variables")
        weights = [1] * n + degrees
        kind = "elim" if homogeneous else "block"
        order = MonomialOrder(kind, n + m, block=n, weights=weights)
        self.ring = PolyRing(xring.field, allnames, order)
        lift = list(range(n))
        gens = []
        for i, f in enumerate(images):
            u = self.ring.var(n + i)
            gens.append(u - f.map_ring(self.ring, lift))
        self.gb = groebner_basis(Ideal(gens, self.ring), order)

    def kernel_basis(self):
        n = self.xring.nvars
        out = []
        for g in self.gb.basis:
            if all(not any(e[:n]) for e in g.terms):
                out.append(g.map_ring(self.uring, _drop_map(n, len(self.images))))
        return out

    def reduce(self, g):
        """Normal form of g (a polynomial in the x-ring) in the elimination ring."""
        n = self.xring.nvars
        lifted = g.map_ring(self.ring, list(range(n)))
        return normal_form(lifted, self.gb)


def _drop_map(n, m):
    # variables n.. map to 0..m-1; x variables never occur in kernel elements
    return [0] * n + list(range(m))


@lru_cache(maxsize=256)
def _elimination(images, names):
    return _Elimination(images, names)


def elimination(images, names=None):
    return _elimination(tuple(images), tuple(names) if names is not None else None)


def _relation_sort_key(r, order):
    return (order.degree(r.leading_monomial(order)),
            [(order.key(e), c) for e, c in r.sorted_terms(order)])


def minimalize_relations(rels, ring):
    """Greedy minimal generating subset of a homogeneous ideal, ascending degree."""
    order = ring.order
    rels = sorted((r for r in rels if not r.is_zero()), key=lambda r: _relation_sort_key(r, order))
    kept = []
    gb = None
    for r in rels:
        if gb is not None and normal_form(r, gb).is_zero():
            continue
        kept.append(r.monic(order))
        gb = groebner_basis(Ideal(kept, ring), order)
    return kept


def kernel_of_algebra_map(images, names=None):
    """Relation ideal of U_i -> images[i], minimally generated, in a weighted presentation ring."""
    elim = elimination(images, names)
    rels = minimalize_relations(elim.kernel_basis(), elim.uring)
    for r in rels:
        assert r.substitute(list(images), elim.xring).is_zero(), "relation does not vanish"
    return Ideal(rels, elim.uring)


def kernel_groebner_basis(images, names=None):
    """Groebner basis of the relation ideal in the weighted presentation order."""
    elim = elimination(images, names)
    return groebner_basis(Ideal(elim.kernel_basis(), elim.uring), elim.uring.order)


Membership = namedtuple("Membership", "member expression")


def subalgebra_membership(g, images, names=None):
    """Decide whether g lies in the subalgebra generated by ``images``."""
    elim = elimination(images, names)
    if g.ring != elim.xring:
        raise RingMismatch("polynomial and images live in different rings")
    nf = elim.reduce(g)
    n = elim.xring.nvars
    if any(any(e[:n]) for e in nf.terms):
        return Membership(False, None)
    expr = nf.map_ring(elim.uring, _drop_map(n, len(elim.images)))
    return Membership(True, expr)


def same_subalgebra(a, b):
    """Two-sided membership: do the generator lists a and b generate the same algebra?"""
    return (all(subalgebra_membership(g, b).member for g in a)
            and all(subalgebra_membership(g, a).member for g in b))
