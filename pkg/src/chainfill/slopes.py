"""Exact arithmetic on slopes.

A slope on a torus boundary component is an extended rational p/q in a
fixed (meridian, longitude) basis.  We work in Q u {inf, empty}: `inf`
is the meridian 1/0 and `empty` is a formal 0/0 marking an unfilled
component.  Every slope is stored as a canonical integer pair (p, q):

    empty  = (0, 0)
    inf    = (1, 0)
    finite = (p, q) with q >= 1 and gcd(|p|, q) = 1

Equality of slopes is equality of canonical pairs.  The 0/0 convention
makes `empty` an absorbing value for every GL(2,Z) fractional-linear
action, which is exactly how unfilled components must behave under the
symmetry maps of the filling calculus.
"""

from __future__ import annotations

from math import gcd

__all__ = [
    "Slope",
    "EMPTY",
    "INFINITY",
    "ZERO",
    "EmptySlopeError",
    "SlopeParseError",
    "parse_slope",
    "distance",
    "canonical_pair",
    "mobius_pair",
    "slope_from_int",
]


class SlopeParseError(ValueError):
    """Raised for text that is not a slope."""


class EmptySlopeError(ValueError):
    """Raised when an empty slot is used where an actual slope is required."""


def canonical_pair(p, q):
    """Reduce an integer pair to the canonical slope representative."""
    if q == 0:
        return (0, 0) if p == 0 else (1, 0)
    g = gcd(p, q)
    p //= g
    q //= g
    if q < 0:
        p, q = -p, -q
    return (p, q)


def mobius_pair(pair, m):
    """Apply the fractional-linear map [[a,b],[c,d]] to a canonical pair.

    (p, q) maps to (a p + b q, c p + d q), re-canonicalised.  The empty
    pair (0, 0) is fixed by every map.
    """
    a, b, c, d = m
    p, q = pair
    return canonical_pair(a * p + b * q, c * p + d * q)


class Slope:
    """An immutable slope in Q u {inf, empty}."""

    __slots__ = ("pair",)

    def __init__(self, numerator, denominator=1):
        object.__setattr__(self, "pair", canonical_pair(numerator, denominator))

    @classmethod
    def from_pair(cls, pair):
        s = object.__new__(cls)
        object.__setattr__(s, "pair", pair)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Slope is immutable")

    @property
    def numerator(self):
        return self.pair[0]

    @property
    def denominator(self):
        return self.pair[1]

    @property
    def is_empty(self):
        return self.pair == (0, 0)

    @property
    def is_infinity(self):
        return self.pair == (1, 0)

    @property
    def is_finite(self):
        return self.pair[1] != 0

    def invert(self):
        """The slope q/p; exchanges 0 and inf, fixes empty."""
        return Slope.from_pair(mobius_pair(self.pair, (0, 1, 1, 0)))

    def affine(self, a, b):
        """The slope a + b*s for integers a and unit b."""
        if b not in (1, -1):
            raise ValueError("affine slope maps only support unit scaling")
        return Slope.from_pair(mobius_pair(self.pair, (b, a, 0, 1)))

    def mobius(self, m):
        """Apply a 2x2 integer fractional-linear map (a, b, c, d)."""
        return Slope.from_pair(mobius_pair(self.pair, m))

    def sort_key(self):
        """Total order: empty < inf < finite by (p, q) lexicographically."""
        p, q = self.pair
        if q == 0:
            return (0, 0, 0) if p == 0 else (1, 0, 0)
        return (2, p, q)

    def __eq__(self, other):
        return isinstance(other, Slope) and self.pair == other.pair

    def __hash__(self):
        return hash(self.pair)

    def __repr__(self):
        return "Slope(%r)" % (str(self),)

    def __str__(self):
        return format_pair(self.pair)


EMPTY = Slope.from_pair((0, 0))
INFINITY = Slope.from_pair((1, 0))
ZERO = Slope.from_pair((0, 1))


def slope_from_int(n):
    return Slope.from_pair((n, 1))


def format_pair(pair):
    p, q = pair
    if q == 0:
        return "-" if p == 0 else "inf"
    if q == 1:
        return str(p)
    return "%d/%d" % (p, q)


def parse_slope(text):
    """Parse `int`, `int/int`, `inf` or `-` (the empty marker).

    The literal text `0/0` is rejected: an unfilled slot is always
    written `-`, so a 0/0 in input signals a mistake rather than the
    formal empty slope.
    """
    text = text.strip()
    if text == "-":
        return EMPTY
    if text in ("inf", "Inf", "INF"):
        return INFINITY
    body = text
    if "/" in body:
        num_text, _, den_text = body.partition("/")
        try:
            p, q = int(num_text), int(den_text)
        except ValueError:
            raise SlopeParseError("not a slope: %r" % text) from None
        if p == 0 and q == 0:
            raise SlopeParseError("ambiguous slope 0/0; write - for an empty slot")
        return Slope(p, q)
    try:
        return Slope(int(body))
    except ValueError:
        raise SlopeParseError("not a slope: %r" % text) from None


def distance(a, b):
    """Geometric intersection number |p s - q r| of two slopes.

    Both arguments must be actual slopes (inf is fine, empty is not).
    """
    if a.is_empty or b.is_empty:
        raise EmptySlopeError("distance requires non-empty slopes")
    p, q = a.pair
    r, s = b.pair
    return abs(p * s - q * r)
