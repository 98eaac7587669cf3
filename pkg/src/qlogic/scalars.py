"""Exact scalars: the rationals and quadratic fields Q(sqrt d) with involution.

For ``d > 0`` the involution is the identity; for ``d < 0`` it is the
conjugation ``sqrt d -> -sqrt d`` (so ``d = -1`` gives the Gaussian rationals).
Rational components are held as ``gmpy2.mpq``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import DescriptorMismatch, NonPositiveInput, ParseError

RATIONAL_TYPES = (int, Fraction, type(mpq(0)), Rational)


def is_square_free(d: int) -> bool:
    d = abs(d)
    if d == 0:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def to_mpq(x):
    return mpq(x)


@dataclass(frozen=True)
class FieldDescriptor:
    """The ring K.  ``d is None`` means the rationals."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if not isinstance(self.d, int) or self.d in (0, 1) or not is_square_free(self.d):
                raise ValueError(f"d must be a square-free integer outside {{0, 1}}, got {self.d!r}")

    @property
    def kind(self) -> str:
        return "Rationals" if self.d is None else "Quadratic"

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def is_real(self) -> bool:
        """True when K embeds in R (and the involution is the identity)."""
        return self.d is None or self.d > 0

    def __call__(self, a=0, b=0) -> FieldScalar:
        return FieldScalar(self, to_mpq(a), to_mpq(b))

    def __str__(self):
        return "Q" if self.d is None else f"Q(sqrt({self.d}))"

    @property
    def zero(self) -> FieldScalar:
        return FieldScalar(self, mpq(0), mpq(0))

    @property
    def one(self) -> FieldScalar:
        return FieldScalar(self, mpq(1), mpq(0))

    @property
    def root(self) -> FieldScalar:
        if self.d is None:
            raise ValueError("Q has no adjoined root")
        return FieldScalar(self, mpq(0), mpq(1))

    def coerce(self, x) -> FieldScalar:
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise DescriptorMismatch(f"scalar over {x.field} used in {self}")
            return x
        if isinstance(x, str):
            return parse_scalar(x, self)
        if isinstance(x, RATIONAL_TYPES):
            return FieldScalar(self, mpq(x), mpq(0))
        raise TypeError(f"cannot interpret {x!r} as an element of {self}")

    def parse(self, text: str) -> FieldScalar:
        return parse_scalar(text, self)

    def automorphisms(self) -> list[FieldAutomorphism]:
        return automorphisms(self)

    def sqrt(self, x: FieldScalar) -> FieldScalar | None:
        """A square root of ``x`` inside K, or None if there is none."""
        x = self.coerce(x)
        if x.is_zero():
            return self.zero
        if self.d is None:
            if x.a < 0:
                return None
            r = is_rational_square(x.a)
            return None if r is None else self(r)
        a, b, d = x.a, x.b, self.d
        candidates = []
        if b == 0:
            if a > 0:
                r = is_rational_square(a)
                if r is not None:
                    candidates.append((r, 0))
            if a / d > 0:
                r = is_rational_square(a / d)
                if r is not None:
                    candidates.append((0, r))
        else:
            norm = a * a - d * b * b
            if norm > 0:
                n = is_rational_square(norm)
                if n is not None:
                    for s in (n, -n):
                        p2 = (a + s) / 2
                        if p2 > 0:
                            p = is_rational_square(p2)
                            if p is not None:
                                candidates.append((p, b / (2 * p)))
        for p, q in candidates:
            y = self(p, q)
            if y * y == x:
                return y
        return None


QQ = FieldDescriptor()


def quadratic(d: int) -> FieldDescriptor:
    return FieldDescriptor(d)


class FieldScalar:
    """Immutable element ``a + b*sqrt(d)`` of a field descriptor."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: FieldDescriptor, a, b=0):
        self.field = field
        self.a = a if type(a) is type(_MPQ0) else mpq(a)
        self.b = b if type(b) is type(_MPQ0) else mpq(b)
        if field.d is None and self.b != 0:
            raise ValueError("rational scalar with a nonzero root coefficient")

    def _other(self, y):
        if type(y) is FieldScalar:
            if y.field is not self.field and y.field != self.field:
                raise DescriptorMismatch(f"{self.field} vs {y.field}")
            return y
        if isinstance(y, RATIONAL_TYPES):
            return FieldScalar(self.field, mpq(y), _MPQ0)
        return NotImplemented

    def __add__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return FieldScalar(self.field, self.a + y.a, self.b + y.b)

    __radd__ = __add__

    def __sub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return FieldScalar(self.field, self.a - y.a, self.b - y.b)

    def __rsub__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y - self

    def __neg__(self):
        return FieldScalar(self.field, -self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        if not self.b and not y.b:
            return FieldScalar(self.field, self.a * y.a, _MPQ0)
        d = self.field.d
        return FieldScalar(self.field, self.a * y.a + d * self.b * y.b, self.a * y.b + self.b * y.a)

    __rmul__ = __mul__

    def inverse(self) -> FieldScalar:
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("inverse of zero")
            return FieldScalar(self.field, 1 / self.a, _MPQ0)
        n = self.a * self.a - self.field.d * self.b * self.b
        return FieldScalar(self.field, self.a / n, -self.b / n)

    def __truediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, y):
        y = self._other(y)
        if y is NotImplemented:
            return y
        return y * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        r = self.field.one
        for _ in range(k):
            r = r * self
        return r

    def conj(self) -> FieldScalar:
        """The involution: identity unless d < 0."""
        d = self.field.d
        if d is None or d > 0 or not self.b:
            return self
        return FieldScalar(self.field, self.a, -self.b)

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not self.b

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return Fraction(int(self.a.numerator), int(self.a.denominator))

    def sign(self) -> int:
        """Exact sign under the real embedding sqrt(d) > 0."""
        a, b = self.a, self.b
        if not b:
            return (a > 0) - (a < 0)
        d = self.field.d
        if d < 0:
            raise ValueError(f"{self} is not real")
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with d b^2
        c = a * a - d * b * b
        return sa if c > 0 else sb

    def __eq__(self, y):
        if type(y) is FieldScalar:
            return self.field == y.field and self.a == y.a and self.b == y.b
        if isinstance(y, RATIONAL_TYPES):
            return not self.b and self.a == y
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.field.d, self.a, self.b))

    def _cmp(self, y) -> int:
        y = self._other(y)
        if y is NotImplemented:
            raise TypeError(f"cannot compare {self!r} with {y!r}")
        return (self - y).sign()

    def __lt__(self, y):
        return self._cmp(y) < 0

    def __le__(self, y):
        return self._cmp(y) <= 0

    def __gt__(self, y):
        return self._cmp(y) > 0

    def __ge__(self, y):
        return self._cmp(y) >= 0

    def __float__(self):
        if self.b and self.field.d < 0:
            raise ValueError(f"{self} is not real")
        return float(self.a) + (float(self.b) * math.sqrt(self.field.d) if self.b else 0.0)

    def __complex__(self):
        d = self.field.d
        if not self.b:
            return complex(float(self.a))
        return complex(float(self.a)) + float(self.b) * complex(d) ** 0.5

    def __repr__(self):
        return f"FieldScalar({self.field}, {self})"

    def __str__(self):
        return format_scalar(self)


_MPQ0 = mpq(0)


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Textual syntax: ``p/q`` or ``p/q + r/s*rt``."""
    if not isinstance(x, FieldScalar):
        return format_rational(x)
    if not x.b:
        return format_rational(x.a)
    coef = format_rational(abs(x.b))
    root = "rt" if coef == "1" else f"{coef}*rt"
    if not x.a:
        return root if x.b > 0 else f"-{root}"
    return f"{format_rational(x.a)} {'+' if x.b > 0 else '-'} {root}"


_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\s*\*\s*)?rt(?:\s*\*\s*(\d+(?:/\d+)?))?$|^(\d+(?:/\d+)?)$")


def parse_scalar(text: str, field: FieldDescriptor = QQ) -> FieldScalar:
    """Parse ``p/q``, ``p/q + r/s*rt``, ``-rt`` ... into a scalar of ``field``."""
    s = text.strip()
    if not s:
        raise ParseError("empty scalar")
    a, b = mpq(0), mpq(0)
    # split into signed terms
    terms = re.findall(r"([+-]?)\s*([^+-]+)", s)
    if "".join(sign + body for sign, body in terms).replace(" ", "") != s.replace(" ", ""):
        raise ParseError(f"malformed scalar {text!r}")
    for sign, body in terms:
        body = body.strip()
        m = _TERM.match(body)
        if not m:
            raise ParseError(f"malformed scalar term {body!r} in {text!r}")
        neg = sign == "-"
        if m.group(3) is not None:
            v = mpq(m.group(3))
            a += -v if neg else v
        else:
            if field.d is None:
                raise ParseError(f"'rt' used in a rational field: {text!r}")
            coef = mpq(m.group(1) or m.group(2) or 1)
            b += -coef if neg else coef
    return FieldScalar(field, a, b)


def is_rational_square(q) -> Fraction | None:
    """Exact rational square root of a positive rational, or None.

    Lowest-terms numerator and denominator must both be perfect squares.
    """
    q = mpq(q)
    if q <= 0:
        raise NonPositiveInput(f"expected a positive rational, got {format_rational(q)}")
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class FieldAutomorphism:
    """``id`` or the root flip ``sqrt d -> -sqrt d``."""

    field: FieldDescriptor
    name: str

    def __call__(self, x):
        if self.name == "id":
            return x
        if isinstance(x, FieldScalar):
            return FieldScalar(x.field, x.a, -x.b)
        return x

    def inverse(self) -> FieldAutomorphism:
        return self

    def compose(self, other: FieldAutomorphism) -> FieldAutomorphism:
        return FieldAutomorphism(self.field, "id" if self.name == other.name else "conj")

    def __str__(self):
        return self.name


def automorphisms(field: FieldDescriptor) -> list[FieldAutomorphism]:
    if field.d is None:
        return [FieldAutomorphism(field, "id")]
    return [FieldAutomorphism(field, "id"), FieldAutomorphism(field, "conj")]


def automorphism(field: FieldDescriptor, name: str) -> FieldAutomorphism:
    if name not in ("id", "conj"):
        raise ValueError(f"unknown automorphism tag {name!r}")
    if name == "conj" and field.d is None:
        raise ValueError("Q has no nontrivial automorphism")
    return FieldAutomorphism(field, name)


def as_fraction(x) -> Fraction | FieldScalar:
    """Rational-valued scalars become Fractions; others are returned unchanged."""
    if isinstance(x, FieldScalar):
        return x.rational() if not x.b else x
    if isinstance(x, Fraction):
        return x
    q = mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))


__all__ = [
    "FieldDescriptor", "FieldScalar", "FieldAutomorphism", "QQ", "quadratic",
    "parse_scalar", "format_scalar", "format_rational", "is_rational_square",
    "automorphisms", "automorphism", "as_fraction",
]
