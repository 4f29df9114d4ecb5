"""Slopes, destabilization, Harder-Narasimhan certificates and weighted filtrations.

Semistability of an individual bundle cannot be decided from Chern data, so it
enters as a declared :class:`SemistabilityCertificate`. A proposed HN
filtration is then *verified* against the two properties that characterize it:
semistable quotients and strictly decreasing reduced Hilbert polynomials.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import VirtualBundle, degree, hilbert_polynomial
from .scalar_poly import ZERO, Ordering, UniPoly, as_rational, eventually_compare


class StabilityError(ValueError):
    pass


class Mode(enum.Enum):
    MT = "MT"
    GIESEKER = "Gieseker"


class Status(enum.Enum):
    SEMISTABLE = "declared-semistable"
    STABLE = "declared-stable"
    UNKNOWN = "unknown"

    @property
    def semistable(self) -> bool:
        return self is not Status.UNKNOWN


@dataclass(frozen=True)
class SemistabilityCertificate:
    subject: str
    status: Status = Status.SEMISTABLE
    justification: str = ""


def _require_positive_rank(E: VirtualBundle):
    if E.rank <= 0:
        raise StabilityError(f"slope undefined for rank {E.rank} ({E.label or '?'})")


def mumford_slope(E: VirtualBundle) -> Fraction:
    _require_positive_rank(E)
    return degree(E) / E.rank


def gieseker_slope(E: VirtualBundle) -> UniPoly:
    """Reduced Hilbert polynomial ``P_E / rk E``."""
    _require_positive_rank(E)
    return hilbert_polynomial(E) / E.rank


def destabilizes(F: VirtualBundle, E: VirtualBundle, mode: Mode = Mode.GIESEKER) -> bool:
    if not 0 < F.rank < E.rank:
        raise StabilityError(
            f"need 0 < rk F < rk E, got rk F = {F.rank}, rk E = {E.rank}")
    if mode is Mode.MT:
        return mumford_slope(F) > mumford_slope(E)
    return eventually_compare(gieseker_slope(F), gieseker_slope(E)) is Ordering.GREATER


@dataclass(frozen=True)
class Filtration:
    """``0 = F_0 ⊂ F_1 ⊂ ... ⊂ F_l = ambient`` with optional quotient certificates.

    ``steps`` holds ``F_1 .. F_l``; ``certificates[i]`` speaks for the quotient
    ``F_{i+1} / F_i``. Missing certificates count as unknown.
    """

    ambient: VirtualBundle
    steps: tuple[VirtualBundle, ...]
    certificates: tuple[SemistabilityCertificate | None, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        certs = tuple(self.certificates)
        if len(certs) > len(self.steps):
            raise StabilityError("more certificates than quotients")
        certs += (None,) * (len(self.steps) - len(certs))
        object.__setattr__(self, "certificates", certs)
        if not self.steps:
            raise StabilityError("a filtration needs at least the final step")
        ranks = [s.rank for s in self.steps]
        if ranks[0] <= 0 or any(a >= b for a, b in zip(ranks, ranks[1:])):
            raise StabilityError(f"ranks must be positive and strictly increasing: {ranks}")
        if self.steps[-1] != self.ambient:
            raise StabilityError("last step must equal the ambient bundle")

    @property
    def length(self) -> int:
        return len(self.steps)

    def quotients(self) -> list[VirtualBundle]:
        out = [self.steps[0]]
        for lower, upper in zip(self.steps, self.steps[1:]):
            q = upper - lower
            out.append(q.named(f"{upper.label}/{lower.label}" if upper.label and lower.label
                               else ""))
        return out


@dataclass(frozen=True)
class WeightedFiltration:
    filtration: Filtration
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(as_rational(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) != self.filtration.length:
            raise StabilityError(
                f"{len(ws)} weights for a filtration with {self.filtration.length} steps")
        if any(a >= b for a, b in zip(ws, ws[1:])):
            raise StabilityError("weights must be strictly increasing")


@dataclass(frozen=True)
class HNVerdict:
    certified: bool
    slopes: tuple[UniPoly, ...]
    reason: str = ""
    failed_at: int | None = field(default=None)

    def __bool__(self):
        return self.certified


def verify_hn_certificate(f: Filtration) -> HNVerdict:
    quotients = f.quotients()
    slopes = tuple(gieseker_slope(q) for q in quotients)
    for i, cert in enumerate(f.certificates):
        if cert is None or not cert.status.semistable:
            return HNVerdict(False, slopes, "uncertified quotient", i)
    for i, (a, b) in enumerate(zip(slopes, slopes[1:])):
        if eventually_compare(a, b) is not Ordering.GREATER:
            return HNVerdict(False, slopes, "slopes not strictly decreasing", i + 1)
    return HNVerdict(True, slopes)


def _step_term(E: VirtualBundle, P_E: UniPoly, F: VirtualBundle) -> UniPoly:
    return hilbert_polynomial(F) * E.rank - P_E * F.rank


def weighted_filtration_pairing(wf: WeightedFiltration) -> UniPoly:
    """``sum (g_{i+1} - g_i)(rk E P_{F_i} - rk F_i P_E)`` over proper steps.

    Semistability along this filtration means the result is ``<= 0`` eventually.
    """
    f = wf.filtration
    P_E = hilbert_polynomial(f.ambient)
    acc = ZERO
    for i, step in enumerate(f.steps[:-1]):
        gap = wf.weights[i + 1] - wf.weights[i]
        acc = acc + _step_term(f.ambient, P_E, step) * gap
    return acc


def filtration_hilbert(f: Filtration) -> UniPoly:
    P_E = hilbert_polynomial(f.ambient)
    acc = ZERO
    for step in f.steps[:-1]:
        acc = acc + _step_term(f.ambient, P_E, step)
    return acc
