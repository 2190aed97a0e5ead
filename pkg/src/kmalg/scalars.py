"""Exact Gaussian-rational scalars: complex numbers with rational parts.

All arithmetic in this package runs over Q(i) so that every equality test,
rank computation and sign verdict is exact. Scalars are immutable.
"""
from __future__ import annotations

from fractions import Fraction

_Rat = (int, Fraction)


class Scalar:
    """A complex number re + im*i with re, im in Q. Immutable, hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- predicates ----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return not self.im

    def is_imaginary(self):
        return not self.re

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return Scalar(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Scalar")
        a, b, c, d = self.re, self.im, other.re, -other.im
        return Scalar((a * c - b * d) / n, (a * d + b * c) / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def conjugate(self):
        return Scalar(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self):
        return render_scalar(self)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, _Rat):
        return Scalar(x)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)

# i**k for k mod 4; used by coefficient maps with parity factors.
I_POWERS = (ONE, I, Scalar(-1), Scalar(0, -1))


def i_power(k: int) -> Scalar:
    return I_POWERS[k % 4]


def render_scalar(s: Scalar) -> str:
    """Canonical exact text form: "0", "3/2", "i", "-2·i", "1/2-3·i"."""
    if not s:
        return "0"
    if not s.im:
        return str(s.re)
    if s.im == 1:
        im = "i"
    elif s.im == -1:
        im = "-i"
    else:
        im = f"{s.im}·i"
    if not s.re:
        return im
    sign = "-" if s.im < 0 else "+"
    mag = -s.im if s.im < 0 else s.im
    im_mag = "i" if mag == 1 else f"{mag}·i"
    return f"{s.re}{sign}{im_mag}"


def parse_scalar(text: str) -> Scalar:
    """Inverse of render_scalar."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    # Split an interior +/- separating real and imaginary parts.
    for pos in range(len(t) - 1, 0, -1):
        if t[pos] in "+-" and t[pos - 1] not in "+-/·":
            re_part, im_part = t[:pos], t[pos:]
            if "i" in im_part and "i" not in re_part:
                return Scalar(Fraction(re_part), _parse_im(im_part))
            break
    if "i" in t:
        return Scalar(0, _parse_im(t))
    return Scalar(Fraction(t))


def _parse_im(t: str) -> Fraction:
    sign = 1
    while t and t[0] in "+-":
        if t[0] == "-":
            sign = -sign
        t = t[1:]
    if t == "i":
        return Fraction(sign)
    if not t.endswith("·i"):
        raise ValueError(f"bad imaginary part {t!r}")
    return sign * Fraction(t[:-2])
