"""Truncated even cohomology of a polarized curve or surface.

Degree-2 classes live in a Néron-Severi model given by a Gram matrix; degree-4
classes are rational multiples of the point class. On a curve the degree-2
part is already top degree and holds a single coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalar_poly import as_rational


class ForeignClassError(ValueError):
    """Raised when classes or bundles from different varieties are combined."""


def _vec(values) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


@dataclass(frozen=True)
class PolarizedVariety:
    """A smooth projective curve or surface with a chosen ample class.

    ``gram`` and ``ample`` describe the Néron-Severi model; on a curve the
    model has rank 1, ``gram`` is unused and the hyperplane class is the
    point count ``curve_degree``.
    """

    dimension: int
    gram: tuple[tuple[int, ...], ...]
    ample: tuple[int, ...]
    tangent_c1: tuple[Fraction, ...]
    tangent_ch2: Fraction = Fraction(0)
    curve_degree: int = 1
    name: str = field(default="X", compare=False)

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.dimension}")
        rho = len(self.ample)
        if rho < 1:
            raise ValueError("Néron-Severi rank must be positive")
        if len(self.gram) != rho or any(len(row) != rho for row in self.gram):
            raise ValueError("gram must be a square matrix matching the ample vector")
        for i in range(rho):
            for j in range(rho):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("gram must be symmetric")
        if len(self.tangent_c1) != rho:
            raise ValueError("tangent_c1 has the wrong length")
        if self.dimension == 2:
            if self.pair(self.ample, self.ample) <= 0:
                raise ValueError("ample class must have positive self-intersection")
        else:
            if rho != 1:
                raise ValueError("curves use a rank-1 Néron-Severi model")
            if self.curve_degree < 1:
                raise ValueError("curve_degree must be positive")
            if self.tangent_ch2 != 0:
                raise ValueError("curves have no degree-4 tangent data")

    @classmethod
    def surface(cls, gram, ample, tangent_c1, *, tangent_c2=None, tangent_ch2=None,
                name="X") -> PolarizedVariety:
        """Surface from lattice data; give exactly one of ``tangent_c2``/``tangent_ch2``."""
        gram = tuple(tuple(int(x) for x in row) for row in gram)
        ample = tuple(int(x) for x in ample)
        c1 = _vec(tangent_c1)
        if (tangent_c2 is None) == (tangent_ch2 is None):
            raise ValueError("give exactly one of tangent_c2 and tangent_ch2")
        if tangent_ch2 is None:
            rho = len(ample)
            c1sq = sum(c1[i] * gram[i][j] * c1[j] for i in range(rho) for j in range(rho))
            tangent_ch2 = c1sq / 2 - as_rational(tangent_c2)
        return cls(2, gram, ample, c1, as_rational(tangent_ch2), name=name)

    @classmethod
    def k3(cls, h2: int = 2) -> PolarizedVariety:
        """K3 surface of Picard rank one with ``H^2 = h2``."""
        if isinstance(h2, bool) or not isinstance(h2, int):
            raise TypeError("H^2 must be an integer")
        if h2 <= 0 or h2 % 2:
            raise ValueError(f"K3 polarization needs even positive H^2, got {h2}")
        return cls(2, ((h2,),), (1,), (Fraction(0),), Fraction(-24), name=f"K3(H^2={h2})")

    @classmethod
    def projective_plane(cls) -> PolarizedVariety:
        return cls.surface([[1]], [1], [3], tangent_c2=3, name="P2")

    @classmethod
    def curve(cls, genus: int, degree: int = 1) -> PolarizedVariety:
        if genus < 0:
            raise ValueError("genus must be nonnegative")
        return cls(1, ((0,),), (1,), (Fraction(2 - 2 * genus),), Fraction(0),
                   curve_degree=degree, name=f"C(g={genus},deg={degree})")

    @property
    def ns_rank(self) -> int:
        return len(self.ample)

    @property
    def genus(self) -> int:
        if self.dimension != 1:
            raise ValueError("genus is only defined here for curves")
        return int(1 - self.tangent_c1[0] / 2)

    def pair(self, u, v) -> Fraction:
        """Intersection pairing of two degree-2 coordinate vectors."""
        if self.dimension == 1:
            return Fraction(0)
        rho = self.ns_rank
        return sum((as_rational(u[i]) * self.gram[i][j] * as_rational(v[j])
                    for i in range(rho) for j in range(rho)), Fraction(0))

    @property
    def h_squared(self) -> Fraction:
        return self.pair(self.ample, self.ample)

    def hyperplane(self) -> CohClass:
        if self.dimension == 1:
            return CohClass(self, 0, (self.curve_degree,))
        return CohClass(self, 0, self.ample)

    def unit(self) -> CohClass:
        return CohClass(self, 1)

    def point(self, c=1) -> CohClass:
        """``c`` times the class of a point."""
        if self.dimension == 1:
            return CohClass(self, 0, (c,))
        return CohClass(self, 0, None, c)

    def divisor(self, coords) -> CohClass:
        return CohClass(self, 0, coords)

    def zero_divisor(self) -> tuple[Fraction, ...]:
        return (Fraction(0),) * self.ns_rank


class CohClass:
    """Element of the truncated even cohomology ring of ``variety``."""

    __slots__ = ("variety", "deg0", "deg2", "deg4")

    def __init__(self, variety: PolarizedVariety, deg0=0, deg2=None, deg4=0):
        self.variety = variety
        self.deg0 = as_rational(deg0)
        self.deg2 = variety.zero_divisor() if deg2 is None else _vec(deg2)
        if len(self.deg2) != variety.ns_rank:
            raise ValueError("degree-2 part has the wrong length")
        self.deg4 = as_rational(deg4)
        if variety.dimension == 1 and self.deg4 != 0:
            raise ValueError("curves have no degree-4 cohomology")

    def _check(self, other: CohClass):
        if not isinstance(other, CohClass):
            raise TypeError(f"expected a cohomology class, got {type(other).__name__}")
        if other.variety != self.variety:
            raise ForeignClassError("foreign class")

    def __add__(self, other):
        self._check(other)
        return CohClass(self.variety, self.deg0 + other.deg0,
                        tuple(a + b for a, b in zip(self.deg2, other.deg2)),
                        self.deg4 + other.deg4)

    def __neg__(self):
        return CohClass(self.variety, -self.deg0, tuple(-a for a in self.deg2), -self.deg4)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> CohClass:
        c = as_rational(c)
        return CohClass(self.variety, c * self.deg0, tuple(c * a for a in self.deg2),
                        c * self.deg4)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return class_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return (self.variety == other.variety and self.deg0 == other.deg0
                and self.deg2 == other.deg2 and self.deg4 == other.deg4)

    def __hash__(self):
        return hash((self.deg0, self.deg2, self.deg4))

    def __repr__(self):
        return f"CohClass(deg0={self.deg0}, deg2={self.deg2}, deg4={self.deg4})"


def class_mul(a: CohClass, b: CohClass) -> CohClass:
    """Graded product, truncated above the top degree."""
    a._check(b)
    X = a.variety
    deg2 = tuple(a.deg0 * y + b.deg0 * x for x, y in zip(a.deg2, b.deg2))
    if X.dimension == 1:
        return CohClass(X, a.deg0 * b.deg0, deg2)
    deg4 = a.deg0 * b.deg4 + b.deg0 * a.deg4 + X.pair(a.deg2, b.deg2)
    return CohClass(X, a.deg0 * b.deg0, deg2, deg4)


def integrate(a: CohClass) -> Fraction:
    """Top-degree component as a rational number."""
    if a.variety.dimension == 1:
        return a.deg2[0]
    return a.deg4
