"""Exact arithmetic in finite fields GF(p) and GF(p^k).

Elements are handled internally as plain ints: a residue for prime fields,
and the base-p packing ``c0 + c1*p + c2*p^2 + ...`` of the coefficient
vector (little-endian in the generator ``t``) for extensions. The ``GF``
object owns the interpretation; ``FieldElement`` is the user-facing wrapper.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import InvalidField, ModulusSearchFailure, NoSuchRoot, ParseError

# little-endian coefficient lists of monic irreducible moduli
MODULUS_TABLE = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 0, 0, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 2): (1, 0, 1),
    (5, 2): (2, 0, 1),
}

MAX_SEARCH_DEGREE = 16
# extensions up to this size get log/exp tables
TABLE_LIMIT = 1 << 20


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------- univariate helpers over GF(p), little-endian lists ----------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a, f, p):
    a = _trim(a)
    f = _trim(f)
    inv_lead = pow(f[-1], p - 2, p)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a = _trim(a)
    return a


def _upoly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _upoly_mod(out, f, p)


def _upoly_powmod(a, n, f, p):
    result = [1]
    base = _upoly_mod(a, f, p)
    while n:
        if n & 1:
            result = _upoly_mulmod(result, base, f, p)
        base = _upoly_mulmod(base, base, f, p)
        n >>= 1
    return result


def _upoly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _upoly_mod(a, b, p)
    return a


def is_irreducible(modulus, p):
    """Ben-Or test: f of degree k is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= k/2."""
    f = _trim(modulus)
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(1, k // 2 + 1):
        xp = _upoly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _upoly_gcd(f, _trim(diff), p)
        if len(g) > 1:
            return False
    return True


def _search_modulus(p, k):
    for n in range(p ** k):
        low = []
        for _ in range(k):
            low.append(n % p)
            n //= p
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise ModulusSearchFailure(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    """Descriptor of the finite field GF(p^k); immutable, compares by value."""

    def __init__(self, characteristic, degree=1, modulus=None):
        if not isinstance(characteristic, int) or not is_prime(characteristic):
            raise InvalidField(f"characteristic {characteristic!r} is not prime")
        if not isinstance(degree, int) or degree < 1:
            raise InvalidField(f"extension degree {degree!r} must be a positive integer")
        self.p = characteristic
        self.k = degree
        self.q = characteristic ** degree
        if degree == 1:
            self.modulus = None
        else:
            if modulus is None:
                raise InvalidField("extension field needs a modulus")
            modulus = tuple(int(c) % characteristic for c in modulus)
            if len(modulus) != degree + 1 or modulus[-1] != 1:
                raise InvalidField("modulus must be monic of the extension degree")
            if not is_irreducible(modulus, characteristic):
                raise InvalidField(f"modulus {modulus} is reducible over GF({characteristic})")
            self.modulus = modulus
        self._exp = None
        self._log = None
        self._gen = None
        if degree > 1 and self.q <= TABLE_LIMIT:
            self._build_tables()

    # ---------- identity ----------

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (
            other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    __str__ = __repr__

    @property
    def is_prime_field(self):
        return self.k == 1

    @property
    def characteristic(self):
        return self.p

    @property
    def extension_degree(self):
        return self.k

    # ---------- encoding ----------

    def digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds):
        v = 0
        for c in reversed(list(ds)):
            v = v * self.p + (c % self.p)
        return v

    def from_int(self, n):
        """Image of the integer n under Z -> GF(q)."""
        return n % self.p

    def elements(self):
        return range(self.q)

    # ---------- arithmetic on encodings ----------

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(x + y for x, y in zip(self.digits(a), self.digits(b)))

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.digits(a))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def _slow_mul(self, a, b):
        r = _upoly_mulmod(_trim(self.digits(a)), _trim(self.digits(b)), self.modulus, self.p)
        return self.from_digits(r + [0] * (self.k - len(r)))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._slow_mul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._log is not None:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if self.k == 1:
            if n < 0:
                return pow(self.inv(a), -n, self.p)
            return pow(a, n, self.p)
        if n < 0:
            a, n = self.inv(a), -n
        if a == 0:
            return 1 if n == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * n) % (self.q - 1)]
        result, base = 1, a
        while n:
            if n & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            n >>= 1
        return result

    # ---------- multiplicative structure ----------

    def order(self, a):
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.q - 1
        for f in prime_factors(self.q - 1):
            while n % f == 0 and self.pow(a, n // f) == 1:
                n //= f
        return n

    def _is_generator(self, a, mul):
        n = self.q - 1
        for f in prime_factors(n):
            # exponentiation via the supplied multiplication
            r, base, e = 1, a, n // f
            while e:
                if e & 1:
                    r = mul(r, base)
                base = mul(base, base)
                e >>= 1
            if r == 1:
                return False
        return True

    def _build_tables(self):
        g = self._find_generator(self._slow_mul)
        exp = [0] * (self.q - 1)
        log = [0] * self.q
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        self._exp, self._log, self._gen = exp, log, g

    def _find_generator(self, mul):
        if self.q == 2:
            return 1
        for a in range(2 if self.q > 2 else 1, self.q):
            if self._is_generator(a, mul):
                return a
        raise AssertionError("finite field without a generator")

    def generator(self):
        """Smallest-encoding generator of the multiplicative group."""
        if self._gen is None:
            self._gen = self._find_generator(self.mul)
        return self._gen

    # ---------- text ----------

    def format(self, a):
        if self.k == 1:
            return str(a)
        parts = []
        for i, c in enumerate(self.digits(a)):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def parse(self, text):
        """Parse an element literal such as ``t+1`` or ``2*t^2+1`` (integers for prime fields)."""
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty field element literal")
        if s[0] not in "+-":
            s = "+" + s
        terms = re.findall(r"([+-])([^+-]+)", s)
        if "".join(sign + body for sign, body in terms) != s:
            raise ParseError(f"bad field element literal {text!r}")
        acc = 0
        for sign, body in terms:
            m = re.fullmatch(r"(\d+)?(?:\*?(t)(?:\^(\d+))?)?", body)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise ParseError(f"bad field element term {body!r}")
            coeff = int(m.group(1)) if m.group(1) is not None else 1
            if m.group(2) is None:
                e = 0
            elif self.k == 1:
                raise ParseError(f"generator t used in prime field {self}")
            else:
                e = int(m.group(3)) if m.group(3) is not None else 1
            term = self.mul(self.from_int(coeff), self.pow(self.generator_t(), e) if e else 1)
            acc = self.sub(acc, term) if sign == "-" else self.add(acc, term)
        return acc

    def generator_t(self):
        """Encoding of the polynomial generator t (the class of t modulo the modulus)."""
        if self.k == 1:
            raise ParseError("prime field has no generator t")
        return self.p if self.k > 1 else 0

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InvalidField("element from a different field")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        return FieldElement(self, self.from_int(value) if self.k == 1 else value % self.q)


class FieldElement:
    """An element of a finite field with operator support."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    @property
    def coeffs(self):
        return self.field.digits(self.value)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidField("field mismatch")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


@lru_cache(maxsize=None)
def make_field(characteristic, extension_degree=1):
    """Return GF(p^k) with a fixed deterministic modulus."""
    if not isinstance(characteristic, int) or not is_prime(characteristic):
        raise InvalidField(f"characteristic {characteristic!r} is not prime")
    if extension_degree < 1:
        raise InvalidField("extension degree must be >= 1")
    if extension_degree == 1:
        return GF(characteristic)
    modulus = MODULUS_TABLE.get((characteristic, extension_degree))
    if modulus is None:
        if extension_degree > MAX_SEARCH_DEGREE:
            raise ModulusSearchFailure(
                f"no table entry for GF({characteristic}^{extension_degree}) and degree exceeds search bound")
        modulus = _search_modulus(characteristic, extension_degree)
    return GF(characteristic, extension_degree, modulus)


def parse_field(text):
    """Parse ``GF(p)`` or ``GF(p^k)``."""
    m = re.fullmatch(r"\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*", text)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    return make_field(int(m.group(1)), int(m.group(2) or 1))


def field_of_size(q):
    for p in prime_factors(q):
        k, n = 0, q
        while n % p == 0:
            n //= p
            k += 1
        if n == 1:
            return make_field(p, k)
    raise InvalidField(f"{q} is not a prime power")


def multiplicative_order_mod(a, n):
    """Smallest e >= 1 with a^e = 1 mod n."""
    if n == 1:
        return 1
    e, x = 1, a % n
    while x != 1:
        x = x * a % n
        e += 1
        if e > n:
            raise ValueError(f"{a} is not a unit mod {n}")
    return e


def root_of_unity(field, p):
    """An element of exact multiplicative order p, built as g^((q-1)/p)."""
    if p == field.p:
        raise NoSuchRoot(f"{p}-th roots of unity collapse to 1 in characteristic {p}")
    if (field.q - 1) % p:
        raise NoSuchRoot(f"{p} does not divide {field.q} - 1")
    g = field.generator()
    xi = field.pow(g, (field.q - 1) // p)
    assert field.pow(xi, p) == 1
    assert all(field.pow(xi, e) != 1 for e in range(1, p))
    return FieldElement(field, xi)


def field_with_roots(characteristic, p):
    """Smallest GF(characteristic^k) containing a primitive p-th root of unity."""
    return make_field(characteristic, multiplicative_order_mod(characteristic, p))
