"""Exact scalars: rationals and Gaussian rationals.

Rational values are kept in lowest terms with a positive denominator, so two
equal scalars are structurally identical.  Gaussian values are pairs of
rationals (re + im*i); a Gaussian with zero imaginary part compares and hashes
equal to the corresponding Rational.  No floating point is used anywhere.

The text grammar (used verbatim in every JSON format) is::

    rational := ['+'|'-'] digits ['/' digits]
    gaussian := rational
              | [rational ('+'|'-')] (rational '*')? 'i'

Examples: "5", "-1/2", "2*i", "-1/2+3*i", "1-i", "0".
"""

from __future__ import annotations

import re
from math import gcd

from .errors import ParseError

__all__ = [
    "Rational",
    "Gaussian",
    "Scalar",
    "Q0",
    "Q1",
    "I",
    "rat",
    "gauss",
    "conj",
    "is_zero",
    "parse_scalar",
    "format_scalar",
]


class Rational:
    """Arbitrary-precision rational number in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num, den)
        if g > 1:
            num //= g
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Rational is immutable")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            return Rational(self.num + other * self.den, self.den)
        if isinstance(other, Rational):
            return Rational(
                self.num * other.den + other.num * self.den, self.den * other.den
            )
        if isinstance(other, Gaussian):
            return Gaussian(self + other.re, other.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Rational(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Rational, Gaussian)):
            return self + (-other if not isinstance(other, int) else -other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Rational(self.num * other, self.den)
        if isinstance(other, Rational):
            return Rational(self.num * other.num, self.den * other.den)
        if isinstance(other, Gaussian):
            return Gaussian(self * other.re, self * other.im)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return Rational(self.num, self.den * other)
        if isinstance(other, Rational):
            return Rational(self.num * other.den, self.den * other.num)
        if isinstance(other, Gaussian):
            return Gaussian(self, Q0) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return Rational(other * self.den, self.num)
        return NotImplemented

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        if isinstance(other, Rational):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Gaussian):
            return other.im.num == 0 and self == other.re
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return self.num != 0

    def __repr__(self):
        return f"Rational({self.num}, {self.den})"

    def __str__(self):
        return format_scalar(self)


class Gaussian:
    """Gaussian rational re + im*i with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", _as_rational(re))
        object.__setattr__(self, "im", _as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gaussian is immutable")

    def __add__(self, other):
        other = _as_gaussian_or_none(other)
        if other is None:
            return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_gaussian_or_none(other)
        if other is None:
            return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_gaussian_or_none(other)
        if other is None:
            return NotImplemented
        return Gaussian(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian_or_none(other)
        if other is None:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian")
        return Gaussian(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _as_gaussian_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            return self.im.num == 0 and self.re == other
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im.num == 0:
            return hash(self.re)
        return hash((self.re.num, self.re.den, self.im.num, self.im.den))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Rational | Gaussian


def _as_rational(x) -> Rational:
    if isinstance(x, Rational):
        return x
    if isinstance(x, int):
        return Rational(x)
    raise TypeError(f"cannot build a Rational from {x!r}")


def _as_gaussian_or_none(x):
    if isinstance(x, Gaussian):
        return x
    if isinstance(x, (int, Rational)):
        return Gaussian(x, 0)
    return None


Q0 = Rational(0)
Q1 = Rational(1)
I = Gaussian(0, 1)


def rat(num: int, den: int = 1) -> Rational:
    return Rational(num, den)


def gauss(re, im=0) -> Gaussian:
    return Gaussian(re, im)


def conj(x: Scalar) -> Scalar:
    """Complex conjugate (identity on rationals)."""
    if isinstance(x, Gaussian):
        return Gaussian(x.re, -x.im)
    return x


def is_zero(x) -> bool:
    return not x


# -- text form ------------------------------------------------------------

_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def _format_rational(x: Rational) -> str:
    if x.den == 1:
        return str(x.num)
    return f"{x.num}/{x.den}"


def format_scalar(x: Scalar) -> str:
    """Canonical text form; parse_scalar round-trips it."""
    if isinstance(x, Rational):
        return _format_rational(x)
    if not x.im:
        return _format_rational(x.re)
    imag = f"{_format_rational(x.im)}*i"
    if not x.re:
        return imag
    if x.im.num > 0:
        return f"{_format_rational(x.re)}+{imag}"
    return f"{_format_rational(x.re)}{imag}"


def _parse_rational_token(tok: str, text: str, path: str | None) -> Rational:
    if "/" in tok:
        a, b = tok.split("/", 1)
        den = int(b)
        if den == 0:
            raise ParseError(f"zero denominator in scalar {text!r}", path)
        return Rational(int(a), den)
    return Rational(int(tok))


_NUM = re.compile(r"\d+(?:/\d+)?")


def parse_scalar(text: str, path: str | None = None) -> Scalar:
    """Parse the scalar grammar; raise ParseError with position context."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}", path)
    s = text.strip()
    if not s:
        raise ParseError("empty scalar", path)

    terms: list[tuple[Rational, bool]] = []  # (value, is_imaginary)
    pos = 0
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            if s[pos] == "-":
                sign = -1
            pos += 1
            if pos >= len(s):
                raise ParseError(f"dangling sign in {text!r}", path)
        elif terms:
            raise ParseError(
                f"expected '+' or '-' at position {pos} in {text!r}", path
            )
        if s[pos] == "i":
            terms.append((Rational(sign), True))
            pos += 1
            continue
        m = _NUM.match(s, pos)
        if not m:
            raise ParseError(
                f"unexpected character {s[pos]!r} at position {pos} in {text!r}", path
            )
        value = _parse_rational_token(m.group(0), text, path) * sign
        pos = m.end()
        if pos < len(s) and s[pos] == "*":
            if pos + 1 >= len(s) or s[pos + 1] != "i":
                raise ParseError(
                    f"expected 'i' after '*' at position {pos + 1} in {text!r}", path
                )
            pos += 2
            terms.append((value, True))
        else:
            terms.append((value, False))
    if len(terms) > 2:
        raise ParseError(f"too many terms in scalar {text!r}", path)
    re_part = Q0
    im_part = Q0
    seen_re = seen_im = False
    for value, is_imag in terms:
        if is_imag:
            if seen_im:
                raise ParseError(f"two imaginary terms in scalar {text!r}", path)
            im_part, seen_im = value, True
        else:
            if seen_re:
                raise ParseError(f"two real terms in scalar {text!r}", path)
            re_part, seen_re = value, True
    if seen_im:
        return Gaussian(re_part, im_part)
    return re_part
