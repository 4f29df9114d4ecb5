"""Exact rationals and univariate polynomials in the twist variable ``m``.

Polynomials are compared in the *eventual* order: ``P > Q`` when ``P(m) > Q(m)``
for all sufficiently large ``m``, which amounts to looking at the sign of the
leading coefficient of ``P - Q``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self) -> str:
        return self.name.capitalize()


class UniPoly:
    """Immutable polynomial in ``m`` with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of ``m**i``; trailing zeros are trimmed, so
    the zero polynomial has an empty coefficient tuple and ``degree`` None.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls((c,))

    @classmethod
    def m(cls) -> UniPoly:
        return cls((0, 1))

    @classmethod
    def from_map(cls, mapping) -> UniPoly:
        """Build from ``{"2": "1", "0": "2"}`` (meaning ``m^2 + 2``)."""
        if not mapping:
            return cls()
        powers = {}
        for key, val in mapping.items():
            power = int(key)
            if power < 0:
                raise ValueError(f"negative power {key!r}")
            powers[power] = powers.get(power, Fraction(0)) + as_rational(val)
        top = max(powers)
        return cls(powers.get(i, 0) for i in range(top + 1))

    def to_map(self) -> dict[str, str]:
        return {str(i): format_rational(c) for i, c in enumerate(self._coeffs) if c != 0}

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int | None:
        """Index of the top nonzero coefficient; None for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else None

    def is_zero(self) -> bool:
        return not self._coeffs

    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def coefficient(self, power: int) -> Fraction:
        return self._coeffs[power] if 0 <= power < len(self._coeffs) else Fraction(0)

    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        return UniPoly.constant(as_rational(other))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return UniPoly(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = as_rational(scalar)
        if s == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return UniPoly(c / s for c in self._coeffs)

    def __call__(self, x) -> Fraction:
        return poly_eval(self, x)

    def compose_neg(self) -> UniPoly:
        """Return ``P(-m)``."""
        return UniPoly(c if i % 2 == 0 else -c for i, c in enumerate(self._coeffs))

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"UniPoly({self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for power in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = format_rational(mag)
            else:
                var = "m" if power == 1 else f"m^{power}"
                if mag == 1:
                    body = var
                elif mag.denominator == 1:
                    body = f"{mag.numerator}{var}"
                else:
                    body = f"({format_rational(mag)}){var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ZERO = UniPoly()


def poly_eval(p: UniPoly, x) -> Fraction:
    """Horner evaluation at an exact rational point."""
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def eventually_compare(p: UniPoly, q: UniPoly) -> Ordering:
    diff = p - q
    if diff.is_zero():
        return Ordering.EQUAL
    return Ordering.GREATER if diff.leading() > 0 else Ordering.LESS


def eventual_bound(p: UniPoly) -> Fraction:
    """A point beyond which ``p`` has the sign of its leading coefficient.

    Cauchy-style bound ``1 + sum |a_i / a_n|``; the zero polynomial gets 0.
    """
    if p.is_zero():
        return Fraction(0)
    lead = p.leading()
    return 1 + sum((abs(c / lead) for c in p.coeffs[:-1]), Fraction(0))
