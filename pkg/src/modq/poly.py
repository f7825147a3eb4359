"""Sparse multivariate polynomials over a finite field.

A polynomial is a dict from exponent tuples to encoded nonzero field
coefficients, bound to a ``PolyRing`` (field + variable names + default
monomial order).
"""

from __future__ import annotations

import re
from itertools import combinations_with_replacement

from .errors import ParseError, RingMismatch
from .field import FieldElement
from . import linalg


class MonomialOrder:
    """A matrix order: monomials compare by the tuple of linear forms ``rows``.

    Supported kinds:

    * ``grlex``: (weighted) degree, then lexicographic by ``priority``.
    * ``lex``: lexicographic by ``priority``.
    * ``block``: product order; the first ``block`` variables (grlex)
      dominate the rest (grlex).
    * ``elim``: weighted degree first, then degree in the first block, then
      lex. Only an elimination order for ideals homogeneous in ``weights``,
      which is all this package feeds it.
    """

    KINDS = ("grlex", "lex", "block", "elim")

    def __init__(self, kind="grlex", nvars=None, priority=None, block=None, weights=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if nvars is None:
            nvars = len(priority) if priority is not None else len(weights)
        self.kind = kind
        self.nvars = nvars
        self.priority = tuple(priority) if priority is not None else tuple(range(nvars))
        if sorted(self.priority) != list(range(nvars)):
            raise ValueError("priority must be a permutation of the variables")
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if kind in ("block", "elim") and block is None:
            raise ValueError(f"{kind} order needs a block size")
        self.block = block
        self.rows = self._rows()
        # for each variable, the row that is its unit vector
        self.unit_row = {}
        for r, row in enumerate(self.rows):
            nz = [i for i, w in enumerate(row) if w]
            if len(nz) == 1 and row[nz[0]] == 1:
                self.unit_row.setdefault(nz[0], r)

    def _unit(self, i):
        return tuple(1 if j == i else 0 for j in range(self.nvars))

    def _rows(self):
        n, w = self.nvars, self.weights
        if self.kind == "lex":
            return [self._unit(i) for i in self.priority]
        if self.kind == "grlex":
            return [w] + [self._unit(i) for i in self.priority]
        b = self.block
        first = [i for i in self.priority if i < b]
        second = [i for i in self.priority if i >= b]
        if self.kind == "block":
            w1 = tuple(w[i] if i < b else 0 for i in range(n))
            w2 = tuple(w[i] if i >= b else 0 for i in range(n))
            return ([w1] + [self._unit(i) for i in first]
                    + [w2] + [self._unit(i) for i in second])
        ones1 = tuple(1 if i < b else 0 for i in range(n))
        return [w, ones1] + [self._unit(i) for i in first] + [self._unit(i) for i in second]

    def key(self, exps):
        return tuple(sum(r * e for r, e in zip(row, exps)) for row in self.rows)

    def degree(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.priority, self.block, self.weights) == (
            other.kind, other.priority, other.block, other.weights)

    def __hash__(self):
        return hash((self.kind, self.priority, self.block, self.weights))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, priority={self.priority}, block={self.block}, weights={self.weights})"


def grlex(nvars, priority=None, weights=None):
    return MonomialOrder("grlex", nvars, priority=priority, weights=weights)


class PolyRing:
    """Polynomial ring over a field with named variables."""

    def __init__(self, field, names, order=None):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self.order = order if order is not None else grlex(self.nvars)
        if self.order.nvars != self.nvars:
            raise ValueError("order size does not match the variable count")

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"PolyRing({self.field}, {list(self.names)})"

    def with_order(self, order):
        return PolyRing(self.field, self.names, order)

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = _coerce_scalar(self.field, c)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, v):
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def index(self, v):
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise ParseError(f"variable index {v} out of range")
            return v
        try:
            return self.names.index(v)
        except ValueError:
            raise ParseError(f"unknown variable {v!r}") from None

    def monomial(self, exps, coeff=1):
        return MultiPoly(self, {tuple(exps): _coerce_scalar(self.field, coeff)})

    def monomials_of_degree(self, d, weights=None):
        """All exponent tuples of (weighted) degree d, in increasing order."""
        if weights is None:
            out = []
            for combo in combinations_with_replacement(range(self.nvars), d):
                e = [0] * self.nvars
                for i in combo:
                    e[i] += 1
                out.append(tuple(e))
            return sorted(out, key=self.order.key)
        return sorted(_weighted_exponents(weights, d), key=self.order.key)

    def parse(self, text):
        return parse_poly(text, self)


def _weighted_exponents(weights, d):
    n = len(weights)
    out = []

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                out.append(tuple(cur))
            return
        w = weights[i]
        for e in range(left // w + 1):
            cur.append(e)
            rec(i + 1, left - e * w, cur)
            cur.pop()

    rec(0, d, [])
    return out


def _coerce_scalar(field, c):
    if isinstance(c, FieldElement):
        if c.field != field:
            raise RingMismatch("scalar from a different field")
        return c.value
    if isinstance(c, int):
        return field.from_int(c)
    raise TypeError(f"cannot use {c!r} as a scalar")


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to encoded coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None

    # ---------- basic queries ----------

    @property
    def field(self):
        return self.ring.field

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self, weights=None):
        if not self.terms:
            return -1
        if weights is None:
            return max(sum(e) for e in self.terms)
        return max(sum(w * x for w, x in zip(weights, e)) for e in self.terms)

    def is_homogeneous(self, weights=None):
        if weights is None:
            degs = {sum(e) for e in self.terms}
        else:
            degs = {sum(w * x for w, x in zip(weights, e)) for e in self.terms}
        return len(degs) <= 1

    def variables(self):
        """Indices of variables that occur."""
        return sorted({i for e in self.terms for i, x in enumerate(e) if x})

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return FieldElement(self.field, self.terms[self.leading_monomial(order)])

    def monic(self, order=None):
        if not self.terms:
            return self
        lc = self.terms[self.leading_monomial(order)]
        return self.scale(self.field.inv(lc))

    def coefficient(self, exps):
        return FieldElement(self.field, self.terms.get(tuple(exps), 0))

    # ---------- arithmetic ----------

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, FieldElement)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out.get(e, 0), c)
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return MultiPoly(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        """Multiply by an encoded field scalar."""
        f = self.field
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: f.mul(c, v) for e, v in self.terms.items()})

    def mul_term(self, exps, c):
        f = self.field
        return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exps)): f.mul(c, v)
                                     for e, v in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        f = self.field
        out = {}
        if f.k == 1:
            p = f.p
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = (out.get(e, 0) + c1 * c2) % p
        else:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = f.add(out.get(e, 0), f.mul(c1, c2))
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, FieldElement)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # ---------- calculus / evaluation ----------

    def derivative(self, v):
        i = self.ring.index(v)
        f = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = f.mul(f.from_int(e[i]), c)
        return MultiPoly(self.ring, out)

    def evaluate(self, point, field=None):
        """Evaluate at a point given as encoded elements of ``field`` (defaults to the ring's field).

        Coefficients are embedded through the prime field, so this is only
        meaningful for a different ``field`` when they lie in GF(p).
        """
        field = field or self.field
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = field.mul(v, field.pow(x, k))
                    if not v:
                        break
            total = field.add(total, v)
        return total

    def substitute(self, images, ring=None):
        """Replace variable i by images[i] (all in ``ring``)."""
        ring = ring or images[0].ring
        f = self.field
        cache = {}
        result = ring.zero()
        for e, c in self.sorted_terms():
            term = ring.const(FieldElement(f, c))
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            result = result + term
        return result

    def map_ring(self, ring, index_map=None):
        """Re-home into another ring over the same field, moving variable i to index_map[i]."""
        if index_map is None:
            index_map = [ring.index(n) for n in self.ring.names]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    ne[index_map[i]] += k
            out[tuple(ne)] = c
        return MultiPoly(ring, out)

    # ---------- text / json ----------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r})"

    def to_json(self):
        return [{"exponents": list(e), "coeff": self.field.format(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, ring, data):
        out = {}
        for t in data:
            c = ring.field.parse(str(t["coeff"]))
            out[tuple(t["exponents"])] = ring.field.add(out.get(tuple(t["exponents"]), 0), c)
        return cls(ring, out)


def format_poly(f):
    if not f.terms:
        return "0"
    field = f.field
    pieces = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            (n if k == 1 else f"{n}^{k}") for n, k in zip(f.ring.names, e) if k)
        cs = field.format(c)
        if field.k > 1 and ("+" in cs):
            cs = f"({cs})"
        if not mono:
            pieces.append(cs)
        elif c == 1:
            pieces.append(mono)
        else:
            pieces.append(f"{cs}*{mono}")
    return " + ".join(pieces)


# ---------- parsing ----------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        if m.group(1) is not None:
            out.append(("num", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, op):
        t = self.take()
        if t != ("op", op):
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        sign = 1
        if self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                v = v * self.factor()
            elif t == ("op", "/"):
                self.take()
                d = self.factor()
                if d.degree() > 0 or d.is_zero():
                    raise ParseError(f"division by a non-constant or zero literal in {self.text!r}")
                field = self.ring.field
                v = v.scale(field.inv(d.terms[(0,) * self.ring.nvars]))
            elif t[0] in ("num", "name") or t == ("op", "("):
                v = v * self.factor()  # implicit product such as 2x
            else:
                return v

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                raise ParseError("negative exponent")
            t = self.take()
            if t[0] != "num":
                raise ParseError(f"exponent must be a literal integer in {self.text!r}")
            return base ** (sign * t[1])
        return base

    def atom(self):
        kind, val = self.take()
        ring = self.ring
        if kind == "num":
            return ring.const(val)
        if kind == "name":
            if val in ring.names:
                return ring.var(val)
            if val == "t" and ring.field.k > 1:
                return ring.const(FieldElement(ring.field, ring.field.generator_t()))
            raise ParseError(f"unknown variable {val!r}")
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect(")")
            return v
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text, ring):
    """Parse a polynomial such as ``x1^2*x3 + 2*x2`` into ``ring``."""
    try:
        return _Parser(text, ring).parse()
    except ZeroDivisionError:
        raise ParseError(f"literal not invertible in characteristic {ring.field.p}: {text!r}") from None


# ---------- group action ----------

def linear_images(matrix, ring):
    """Images of the variables under the contragredient action of ``matrix``.

    x_i is sent to sum_j (matrix^-1)[i][j] x_j, which makes
    ``act(g*h, f) = act(g, act(h, f))``.
    """
    field = ring.field
    n = ring.nvars
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise ValueError("matrix size does not match the variable count")
    inv = linalg.mat_inv(field, matrix)
    units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    return [MultiPoly(ring, {units[j]: inv[i][j] for j in range(n) if inv[i][j]}) for i in range(n)]


def act_on_polynomial(matrix, f):
    """Apply a group element (invertible matrix) to f."""
    return Action(matrix, f.ring)(f)


class Action:
    """Cached action of one matrix on polynomials of a ring; reuses powers of variable images."""

    def __init__(self, matrix, ring):
        self.ring = ring
        self.images = linear_images(matrix, ring)
        self._powers = {}

    def _power(self, i, k):
        key = (i, k)
        if key not in self._powers:
            if k == 1:
                self._powers[key] = self.images[i]
            else:
                self._powers[key] = self._power(i, k - 1) * self.images[i]
        return self._powers[key]

    def monomial(self, exps):
        out = self.ring.one()
        for i, k in enumerate(exps):
            if k:
                out = out * self._power(i, k)
        return out

    def __call__(self, f):
        result = {}
        field = f.field
        for e, c in f.terms.items():
            img = self.monomial(e)
            for e2, c2 in img.terms.items():
                result[e2] = field.add(result.get(e2, 0), field.mul(c, c2))
        return MultiPoly(f.ring, result)
