"""Exact rational and complex-rational scalars.

Every number this package computes with is an exact rational ``Rat`` or a
complex number ``CRat`` with exact rational parts.  ``Rat`` is gmpy2's
``mpq`` when available (much faster on the long products the enumeration
oracles and gadget chains produce) and ``fractions.Fraction`` otherwise.
Both are arbitrary precision, always reduced, positive denominator, and
hash/compare interchangeably.

Serialization is the plain ``"p/q"`` string form (just ``"p"`` when the
denominator is 1).  Decimal literals are rejected on parse: a decimal in
an input almost always means somebody lost exactness upstream.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
    _HAVE_GMPY = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    Rat = Fraction
    _HAVE_GMPY = False

RatLike = object  # int | Fraction | Rat | str accepted by rat()


def rat(value, den=None) -> "Rat":
    """Coerce to Rat. Accepts int, Fraction, Rat, 'p/q' strings, (p, q)."""
    if den is not None:
        return Rat(value) / Rat(den)
    if isinstance(value, str):
        return parse_rat(value)
    return Rat(value)


def parse_rat(text: str) -> "Rat":
    """Parse 'p' or 'p/q'. Decimals and anything else raise ValueError."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        num, den = num.strip(), den.strip()
        if not _INT_RE_ok(num) or not _INT_RE_ok(den, signed=False):
            raise ValueError(f"not a rational 'p/q' literal: {text!r}")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Rat(int(num), int(den))
    if not _INT_RE_ok(s):
        raise ValueError(f"not a rational 'p' or 'p/q' literal: {text!r}")
    return Rat(int(s))


def _INT_RE_ok(s: str, signed: bool = True) -> bool:
    if signed and s[:1] in "+-":
        s = s[1:]
    return s.isdigit() and s != ""


def format_rat(x) -> str:
    """Render as 'p/q' (or 'p' for integers); inverse of parse_rat."""
    x = Rat(x)
    return str(x)


def sign(x) -> int:
    return (x > 0) - (x < 0)


class CRat:
    """Complex number with exact rational real and imaginary parts.

    Supports +, -, *, / (exact), integer powers, conjugation and the exact
    squared modulus.  There is deliberately no abs(): the modulus itself is
    usually irrational, and callers are expected to compare abs2() against
    squared rational radii instead.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Rat(re))
        object.__setattr__(self, "im", Rat(im))

    def __setattr__(self, *a):  # immutable
        raise AttributeError("CRat is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def from_json(cls, obj) -> "CRat":
        return cls(parse_rat(obj["re"]), parse_rat(obj["im"]))

    def to_json(self) -> dict:
        return {"re": format_rat(self.re), "im": format_rat(self.im)}

    # -- predicates ---------------------------------------------------
    def is_real(self) -> bool:
        return self.im == 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def abs2(self):
        """|z|^2 as an exact Rat."""
        return self.re * self.re + self.im * self.im

    def conj(self) -> "CRat":
        return CRat(self.re, -self.im)

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, CRat):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(Rat(0)):
            return CRat(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CRat(o.re - self.re, o.im - self.im)

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CRat(self.re * o.re - self.im * o.im,
                    self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat((self.re * o.re + self.im * o.im) / d,
                    (o.re * self.im - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (CRat(1) / self) ** (-k)
        out, base = CRat(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((Fraction(self.re), Fraction(self.im)))

    def __repr__(self):
        if self.im == 0:
            return f"CRat({format_rat(self.re)})"
        return f"CRat({format_rat(self.re)}, {format_rat(self.im)})"


ZERO = Rat(0)
ONE = Rat(1)
