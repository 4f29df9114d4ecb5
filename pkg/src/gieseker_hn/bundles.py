"""Virtual bundles described by rank and Chern character.

Only the numerical data enters any computation: exact sequences are encoded
through additivity of the Chern character, so a nonsplit extension and the
corresponding direct sum are indistinguishable here.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .cohomology import CohClass, ForeignClassError, PolarizedVariety, integrate
from .scalar_poly import UniPoly, as_rational


class InvariantViolation(ValueError):
    pass


@dataclass(frozen=True)
class VirtualBundle:
    """Class in K-theory tensored with Q, seen through ``ch``.

    ``genuine`` marks an honest bundle (rank at least one); formal differences
    produced by ``-`` are not genuine and may have any rank.
    """

    variety: PolarizedVariety
    rank: int
    ch1: tuple[Fraction, ...]
    ch2: Fraction = Fraction(0)
    label: str = field(default="", compare=False)
    genuine: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ch1", tuple(as_rational(x) for x in self.ch1))
        object.__setattr__(self, "ch2", as_rational(self.ch2))
        if len(self.ch1) != self.variety.ns_rank:
            raise ValueError("ch1 has the wrong length for this variety")
        if self.variety.dimension == 1 and self.ch2 != 0:
            raise ValueError("curves carry no ch2")
        if self.genuine and self.rank < 1:
            raise InvariantViolation(
                f"genuine bundle {self.label or '?'} must have rank >= 1, got {self.rank}")

    def ch(self) -> CohClass:
        return CohClass(self.variety, self.rank, self.ch1, self.ch2)

    def named(self, label: str) -> VirtualBundle:
        return replace(self, label=label)

    def same_class(self, other: VirtualBundle) -> bool:
        return self == other

    def is_integral(self) -> bool:
        """Whether c1 is a lattice vector and c2 an integer."""
        c1, c2 = chern_classes(self)
        return all(x.denominator == 1 for x in c1) and c2.denominator == 1

    def _check(self, other):
        if not isinstance(other, VirtualBundle):
            raise TypeError(f"expected a VirtualBundle, got {type(other).__name__}")
        if other.variety != self.variety:
            raise ForeignClassError("foreign class")

    def __add__(self, other):
        return direct_sum(self, other)

    def __sub__(self, other):
        self._check(other)
        return VirtualBundle(self.variety, self.rank - other.rank,
                             tuple(a - b for a, b in zip(self.ch1, other.ch1)),
                             self.ch2 - other.ch2,
                             label=f"{_paren(self.label)}/{_paren(other.label)}",
                             genuine=False)

    def __mul__(self, other):
        return tensor(self, other)

    def __str__(self):
        return self.label or repr(self)


def _paren(label: str) -> str:
    if not label:
        return "?"
    return f"({label})" if any(op in label for op in " +⊕⊗/") else label


def _join(a: str, b: str, op: str) -> str:
    if not a or not b:
        return ""
    return f"{a}{op}{b}"


def from_chern(X: PolarizedVariety, rank: int, c1=None, c2=0, label="",
               genuine=True) -> VirtualBundle:
    c1 = X.zero_divisor() if c1 is None else tuple(as_rational(x) for x in c1)
    c2 = as_rational(c2)
    if X.dimension == 1:
        if c2 != 0:
            raise ValueError("curves have no c2")
        return VirtualBundle(X, rank, c1, 0, label, genuine)
    return VirtualBundle(X, rank, c1, X.pair(c1, c1) / 2 - c2, label, genuine)


def chern_classes(E: VirtualBundle) -> tuple[tuple[Fraction, ...], Fraction]:
    if E.variety.dimension == 1:
        return E.ch1, Fraction(0)
    return E.ch1, E.variety.pair(E.ch1, E.ch1) / 2 - E.ch2


def structure_sheaf(X: PolarizedVariety) -> VirtualBundle:
    return VirtualBundle(X, 1, X.zero_divisor(), 0, label="O")


def line_bundle(X: PolarizedVariety, c1, label="") -> VirtualBundle:
    """Line bundle with first Chern class ``c1`` (a lattice vector)."""
    return from_chern(X, 1, c1, 0, label=label)


def hyperplane_twist(X: PolarizedVariety, k) -> VirtualBundle:
    """``O(kH)``."""
    k = as_rational(k)
    if X.dimension == 1:
        return VirtualBundle(X, 1, (k * X.curve_degree,), 0, label=f"O({k})")
    return line_bundle(X, tuple(k * a for a in X.ample), label=f"O({k})")


def tangent_bundle(X: PolarizedVariety) -> VirtualBundle:
    return VirtualBundle(X, X.dimension, X.tangent_c1, X.tangent_ch2, label="TX")


def dual(E: VirtualBundle) -> VirtualBundle:
    label = ""
    if E.label:
        label = E.label[:-1] if E.label.endswith("∨") else _paren(E.label) + "∨"
    return replace(E, ch1=tuple(-x for x in E.ch1), label=label)


def direct_sum(E: VirtualBundle, F: VirtualBundle) -> VirtualBundle:
    E._check(F)
    return VirtualBundle(E.variety, E.rank + F.rank,
                         tuple(a + b for a, b in zip(E.ch1, F.ch1)), E.ch2 + F.ch2,
                         label=_join(E.label, F.label, "⊕"),
                         genuine=E.genuine and F.genuine)


def tensor(E: VirtualBundle, F: VirtualBundle) -> VirtualBundle:
    E._check(F)
    prod = E.ch() * F.ch()
    return VirtualBundle(E.variety, E.rank * F.rank, prod.deg2, prod.deg4,
                         label=_join(_paren(E.label), _paren(F.label), "⊗"),
                         genuine=E.genuine and F.genuine)


def total(bundles, X: PolarizedVariety) -> VirtualBundle:
    """Direct sum of an iterable of bundles; the zero object when empty."""
    items = list(bundles)
    if not items:
        return VirtualBundle(X, 0, X.zero_divisor(), 0, label="0", genuine=False)
    acc = items[0]
    for b in items[1:]:
        acc = direct_sum(acc, b)
    return acc


def todd_class(X: PolarizedVariety) -> CohClass:
    c1 = X.tangent_c1
    half_c1 = tuple(x / 2 for x in c1)
    if X.dimension == 1:
        return CohClass(X, 1, half_c1)
    c1sq = X.pair(c1, c1)
    c2 = c1sq / 2 - X.tangent_ch2
    return CohClass(X, 1, half_c1, (c1sq + c2) / 12)


def euler_char(E: VirtualBundle) -> Fraction:
    """Hirzebruch-Riemann-Roch: integral of ``ch(E) td(X)``."""
    return integrate(E.ch() * todd_class(E.variety))


def hilbert_polynomial(E: VirtualBundle) -> UniPoly:
    """``m -> chi(E(m))`` as an exact polynomial.

    Expands ``ch(E) td(X) exp(mH)``: the coefficient of ``m^k`` is the integral
    of ``ch(E) td(X) H^k / k!``.
    """
    X = E.variety
    base = E.ch() * todd_class(X)
    H = X.hyperplane()
    coeffs = []
    power = base
    factorial = 1
    for k in range(X.dimension + 1):
        if k:
            power = power * H
            factorial *= k
        coeffs.append(integrate(power) / factorial)
    return UniPoly(coeffs)


def degree(E: VirtualBundle) -> Fraction:
    X = E.variety
    if X.dimension == 1:
        return E.ch1[0]
    return X.pair(E.ch1, X.ample)
