"""Indecomposable modular representations of the cyclic group C_2p and their direct sums."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from . import linalg
from .errors import ParseError, RegimeMismatch, UnsupportedRegime
from .field import field_with_roots, is_prime, make_field, root_of_unity
from .poly import Action, PolyRing

CHAR2_P2 = "char2_p2"
CHARP = "charp"
CHAR2_PODD = "char2_podd"
REGIMES = (CHAR2_P2, CHARP, CHAR2_PODD)


def regime_of(p: int, characteristic: int) -> str:
    """Which of the three supported (characteristic, p) cases applies."""
    if not (is_prime(p) and is_prime(characteristic)):
        raise UnsupportedRegime(f"p={p} and characteristic={characteristic} must both be prime")
    if p == 2 and characteristic == 2:
        return CHAR2_P2
    if p > 2 and characteristic == p:
        return CHARP
    if p > 2 and characteristic == 2:
        return CHAR2_PODD
    raise UnsupportedRegime(f"unsupported pair: characteristic {characteristic}, p = {p}")


@dataclass(frozen=True, order=True)
class IndecomposableSpec:
    """One indecomposable summand.

    ``kind`` is "V" or "W"; ``index`` is the Jordan size k (V_k, V_k^+/-)
    or the character exponent i (V_i, W_i in the char 2, odd p regime);
    ``sign`` is "+", "-" or "" .
    """

    regime: str
    kind: str
    index: int
    sign: str = ""

    @property
    def dimension(self) -> int:
        if self.regime == CHAR2_PODD:
            return 1 if self.kind == "V" else 2
        return self.index

    @property
    def label(self) -> str:
        return f"{self.kind}{self.index}{self.sign}"

    @property
    def is_trivial(self) -> bool:
        """The one-dimensional trivial representation."""
        if self.regime == CHAR2_P2:
            return self.index == 1
        if self.regime == CHARP:
            return self.index == 1 and self.sign == "+"
        return self.kind == "V" and self.index == 0

    def __str__(self):
        return self.label


def _check_spec(spec: IndecomposableSpec, p: int):
    r = spec.regime
    if r == CHAR2_P2:
        ok = spec.kind == "V" and 1 <= spec.index <= 4 and spec.sign == ""
    elif r == CHARP:
        ok = spec.kind == "V" and 1 <= spec.index <= p and spec.sign in "+-" and spec.sign
    else:
        ok = spec.kind in ("V", "W") and 0 <= spec.index <= p - 1 and spec.sign == ""
    if not ok:
        raise ParseError(f"{spec.label} is not an indecomposable for this regime ({r}, p={p})")


def indecomposable_catalog(p: int, characteristic: int) -> list:
    regime = regime_of(p, characteristic)
    if regime == CHAR2_P2:
        return [IndecomposableSpec(regime, "V", k) for k in range(1, 5)]
    if regime == CHARP:
        return ([IndecomposableSpec(regime, "V", k, "+") for k in range(1, p + 1)]
                + [IndecomposableSpec(regime, "V", k, "-") for k in range(1, p + 1)])
    return ([IndecomposableSpec(regime, "V", i) for i in range(p)]
            + [IndecomposableSpec(regime, "W", i) for i in range(p)])


_SUMMAND = re.compile(r"^\s*(\d*)\s*\*?\s*([VW])\s*_?\s*(\d+)\s*\^?\s*([+-]?)\s*$")


def parse_summands(text: str, p: int, characteristic: int) -> list:
    """Parse "V2+,V2-,V1-" / "2V2" / "W1,V2" into a list of specs (multiplicities expanded)."""
    regime = regime_of(p, characteristic)
    out = []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _SUMMAND.match(part)
        if not m:
            raise ParseError(f"cannot parse summand {part.strip()!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        spec = IndecomposableSpec(regime, m.group(2), int(m.group(3)), m.group(4))
        _check_spec(spec, p)
        out.extend([spec] * mult)
    if not out:
        raise ParseError("empty summand list")
    return out


def format_summands(specs) -> str:
    """Compact label such as "2V2+,V1-" (input order kept, equal neighbours merged)."""
    parts = []
    for s in specs:
        if parts and parts[-1][1] == s:
            parts[-1][0] += 1
        else:
            parts.append([1, s])
    return ",".join((f"{n}" if n > 1 else "") + s.label for n, s in parts)


def _jordan(field, k, diag):
    m = [[0] * k for _ in range(k)]
    for i in range(k):
        m[i][i] = diag
        if i:
            m[i][i - 1] = 1
    return m


def summand_block(spec: IndecomposableSpec, field, xi=None):
    if spec.regime == CHAR2_P2:
        return _jordan(field, spec.index, 1)
    if spec.regime == CHARP:
        block = _jordan(field, spec.index, 1)
        if spec.sign == "-":
            # -T^+ : similar to the Jordan block with diagonal -1, and the
            # form for which T^-(f) = (-1)^deg(f) f on T^+-invariants
            block = [[field.neg(v) for v in row] for row in block]
        return block
    c = field.pow(xi, spec.index)
    if spec.kind == "V":
        return [[c]]
    return [[c, 0], [1, c]]


def variable_names(n: int) -> list:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i + 1}" for i in range(n)]


class Representation:
    """A direct sum of indecomposables with its block-diagonal generator matrix."""

    def __init__(self, p, characteristic, summands, field=None, names=None, order=None):
        self.p = p
        self.characteristic = characteristic
        self.regime = regime_of(p, characteristic)
        self.summands = list(summands)
        if not self.summands:
            raise ValueError("a representation needs at least one summand")
        for s in self.summands:
            if s.regime != self.regime:
                raise RegimeMismatch(f"summand {s.label} belongs to {s.regime}, not {self.regime}")
            _check_spec(s, p)
        if field is None:
            if self.regime == CHAR2_PODD:
                field = field_with_roots(2, p)
            else:
                field = make_field(characteristic)
        if field.p != characteristic:
            raise RegimeMismatch("field characteristic does not match")
        self.field = field
        self.xi = root_of_unity(field, p).value if self.regime == CHAR2_PODD else None
        self.generator = linalg.block_diagonal(field, [summand_block(s, field, self.xi) for s in self.summands])
        self.dimension = len(self.generator)
        self.group_order = 2 * p
        self.ring = PolyRing(field, names or variable_names(self.dimension), order)
        self._invariant_cache = {}

    def __repr__(self):
        return f"Representation(p={self.p}, char={self.characteristic}, {format_summands(self.summands)})"

    @property
    def label(self):
        return format_summands(self.summands)

    def blocks(self):
        """(start, size) of each summand in the variable list."""
        out, off = [], 0
        for s in self.summands:
            out.append((off, s.dimension))
            off += s.dimension
        return out

    def element(self, e: int):
        return linalg.mat_pow(self.field, self.generator, e % self.group_order)

    @cached_property
    def elements(self):
        """sigma^0, ..., sigma^(2p-1)."""
        out = [linalg.identity(self.field, self.dimension)]
        for _ in range(self.group_order - 1):
            out.append(linalg.mat_mul(self.field, out[-1], self.generator))
        return out

    @cached_property
    def image_order(self) -> int:
        return linalg.mat_order(self.field, self.generator, self.group_order)

    @cached_property
    def action(self):
        return Action(self.generator, self.ring)

    def act(self, f, power=1):
        if power % self.group_order == 1:
            return self.action(f)
        return Action(self.element(power), self.ring)(f)

    def fixed_codim(self, e: int) -> int:
        """rank(sigma^e - 1)."""
        f = self.field
        return linalg.rank(f, linalg.mat_sub(f, self.elements[e % self.group_order],
                                             linalg.identity(f, self.dimension)))

    @property
    def sylow_exponent(self) -> int:
        """s such that sigma^s generates the Sylow subgroup for the characteristic."""
        if self.regime == CHAR2_P2:
            return 1
        if self.regime == CHARP:
            return 2
        return self.p

    def to_json(self):
        f = self.field
        return {"p": self.p, "characteristic": self.characteristic, "regime": self.regime,
                "field": str(f), "summands": [s.label for s in self.summands],
                "dimension": self.dimension, "variables": list(self.ring.names),
                "generator": [[f.format(v) for v in row] for row in self.generator]}


def build_representation(p, characteristic, summands, field=None, names=None) -> Representation:
    """``summands`` is a list of IndecomposableSpec or a summand string."""
    if isinstance(summands, str):
        summands = parse_summands(summands, p, characteristic)
    return Representation(p, characteristic, summands, field, names)


@dataclass(frozen=True)
class StructurePredicates:
    faithful: bool
    reduced: bool
    has_reflection: bool
    is_bireflection_group: bool
    sylow_p_fixed_codim: int

    def to_json(self):
        return dict(self.__dict__)


def structure_predicates(rep: Representation) -> StructurePredicates:
    n = rep.image_order
    ranks = [rep.fixed_codim(e) for e in range(n)]
    has_reflection = any(r == 1 for r in ranks[1:])
    # the image is cyclic of order n; elements sigma^a with small rank
    # generate it iff gcd of their exponents with n is 1
    g = n
    for a in range(1, n):
        if ranks[a] <= 2:
            g = gcd(g, a)
    return StructurePredicates(
        faithful=n == rep.group_order,
        reduced=not any(s.is_trivial for s in rep.summands),
        has_reflection=has_reflection,
        is_bireflection_group=g == 1,
        sylow_p_fixed_codim=rep.fixed_codim(rep.sylow_exponent),
    )
