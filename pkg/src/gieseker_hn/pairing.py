"""Flag-compatible subobjects of direct sums of towers, with a perfect pairing.

A :class:`Tower` presents a bundle as an iterated extension, bottom factor
first. Subobjects of a :class:`SumObject` are restricted to prefix selections,
one prefix length per tower. A :class:`PairingStructure` pairs each tower with
a partner whose factors are slotwise dual; under such a pairing the
annihilator of the ``i``-th flag step of a tower is the ``(k - i)``-th flag step
of its partner.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .bundles import VirtualBundle, dual, hilbert_polynomial, total
from .scalar_poly import Ordering, UniPoly, eventually_compare


class PairingError(ValueError):
    pass


class NonIsotropicError(PairingError):
    pass


class Extension(enum.Enum):
    SPLIT = "split"
    NONSPLIT = "nonsplit"


class Symmetry(enum.Enum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True)
class Tower:
    factors: tuple[VirtualBundle, ...]
    extensions: tuple[Extension, ...] = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise PairingError("a tower needs at least one factor")
        exts = tuple(Extension(e) for e in self.extensions)
        if not exts:
            exts = (Extension.SPLIT,) * (len(self.factors) - 1)
        if len(exts) != len(self.factors) - 1:
            raise PairingError(
                f"tower {self.label!r}: {len(exts)} extension flags for {len(self.factors)} factors")
        object.__setattr__(self, "extensions", exts)
        X = self.factors[0].variety
        if any(f.variety != X for f in self.factors):
            raise PairingError(f"tower {self.label!r} mixes varieties")

    def __len__(self):
        return len(self.factors)

    @property
    def variety(self):
        return self.factors[0].variety

    def prefix(self, k: int) -> VirtualBundle:
        return total(self.factors[:k], self.variety)

    def bundle(self) -> VirtualBundle:
        return self.prefix(len(self)).named(self.label)


@dataclass(frozen=True, order=False)
class AdmissibleSub:
    """One prefix length per tower; ordered componentwise."""

    prefix: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(p) for p in self.prefix))

    def __le__(self, other: AdmissibleSub) -> bool:
        return all(a <= b for a, b in zip(self.prefix, other.prefix, strict=True))

    def __lt__(self, other: AdmissibleSub) -> bool:
        return self <= other and self != other

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def meet(self, other: AdmissibleSub) -> AdmissibleSub:
        return AdmissibleSub(tuple(map(min, self.prefix, other.prefix)))

    def join(self, other: AdmissibleSub) -> AdmissibleSub:
        return AdmissibleSub(tuple(map(max, self.prefix, other.prefix)))

    def __iter__(self):
        return iter(self.prefix)

    def __str__(self):
        return "(" + ",".join(map(str, self.prefix)) + ")"


@dataclass(frozen=True)
class SumObject:
    towers: tuple[Tower, ...]

    def __post_init__(self):
        object.__setattr__(self, "towers", tuple(self.towers))
        if not self.towers:
            raise PairingError("empty sum object")
        X = self.towers[0].variety
        if any(t.variety != X for t in self.towers):
            raise PairingError("towers live on different varieties")

    @property
    def variety(self):
        return self.towers[0].variety

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self.towers)

    def zero(self) -> AdmissibleSub:
        return AdmissibleSub((0,) * len(self.towers))

    def full(self) -> AdmissibleSub:
        return AdmissibleSub(self.lengths)

    def check(self, S: AdmissibleSub) -> AdmissibleSub:
        if len(S.prefix) != len(self.towers):
            raise PairingError(f"sub {S} has {len(S.prefix)} entries for {len(self.towers)} towers")
        for p, n in zip(S.prefix, self.lengths):
            if not 0 <= p <= n:
                raise PairingError(f"sub {S} out of range for tower lengths {self.lengths}")
        return S

    def all_subs(self):
        for prefix in itertools.product(*(range(n + 1) for n in self.lengths)):
            yield AdmissibleSub(prefix)

    def bundle(self, S: AdmissibleSub | None = None) -> VirtualBundle:
        """The bundle underlying ``S`` (the whole object when omitted)."""
        S = self.full() if S is None else self.check(S)
        parts = [t.prefix(p) for t, p in zip(self.towers, S.prefix) if p]
        return total(parts, self.variety).named(self.describe(S))

    def total(self) -> VirtualBundle:
        return self.bundle()

    def rank(self, S: AdmissibleSub) -> int:
        return self.bundle(S).rank if any(S.prefix) else 0

    def describe(self, S: AdmissibleSub) -> str:
        """Human-readable name built from tower and factor labels, e.g. ``TX⊕V∨``."""
        names = []
        for t, p in zip(self.towers, S.prefix):
            if p == 0:
                continue
            if p == len(t):
                names.append(t.label or "?")
            elif p == 1:
                names.append(t.factors[0].label or f"{t.label}[:1]")
            else:
                names.append(f"{t.label}[:{p}]")
        return "⊕".join(names) if names else "0"

    def hilbert(self, S: AdmissibleSub) -> UniPoly:
        if not any(S.prefix):
            return UniPoly()
        return hilbert_polynomial(self.bundle(S))


@dataclass(frozen=True)
class PairingStructure:
    partner: tuple[int, ...]
    symmetry: Symmetry = Symmetry.SYMMETRIC

    def __post_init__(self):
        object.__setattr__(self, "partner", tuple(int(p) for p in self.partner))
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        n = len(self.partner)
        for t, p in enumerate(self.partner):
            if not 0 <= p < n:
                raise PairingError(f"partner index {p} out of range")
            if p == t:
                raise PairingError(f"tower {t} is paired with itself")
            if self.partner[p] != t:
                raise PairingError("partner map is not an involution")

    def validate(self, obj: SumObject) -> PairingStructure:
        """Check the slotwise duality constraint against ``obj``."""
        if len(self.partner) != len(obj.towers):
            raise PairingError("partner map does not match the number of towers")
        for t, tower in enumerate(obj.towers):
            mate = obj.towers[self.partner[t]]
            k = len(tower)
            if len(mate) != k:
                raise PairingError(
                    f"towers {tower.label!r} and {mate.label!r} have different lengths")
            for j in range(k):
                if tower.factors[j] != dual(mate.factors[k - 1 - j]):
                    raise PairingError(
                        f"factor {j + 1} of {tower.label!r} is not dual to factor "
                        f"{k - j} of {mate.label!r}")
        return self


def annihilator(S: AdmissibleSub, P: PairingStructure, obj: SumObject) -> AdmissibleSub:
    obj.check(S)
    if len(P.partner) != len(obj.towers):
        raise PairingError("pairing does not match the object")
    return AdmissibleSub(tuple(len(obj.towers[t]) - S.prefix[P.partner[t]]
                               for t in range(len(obj.towers))))


def is_isotropic(S: AdmissibleSub, P: PairingStructure, obj: SumObject) -> bool:
    return S <= annihilator(S, P, obj)


@dataclass(frozen=True)
class OrthogonalVerdict:
    """Outcome of ``P_F + P_{F⊥} <= P_E`` for one isotropic ``F``."""

    sub: AdmissibleSub
    annihilator: AdmissibleSub
    difference: UniPoly
    ordering: Ordering

    @property
    def holds(self) -> bool:
        return self.ordering is not Ordering.GREATER

    @property
    def strict(self) -> bool:
        return self.ordering is Ordering.LESS


def orthogonal_semistability_check(isotropics, P: PairingStructure,
                                   obj: SumObject) -> list[OrthogonalVerdict]:
    """Compare ``P_F + P_{F⊥}`` with ``P_E`` for each listed isotropic sub.

    ``difference`` is ``P_F + P_{F⊥} - P_E``; it is ``<= 0`` eventually exactly
    when the inequality holds.
    """
    subs = list(isotropics)
    for S in subs:
        if not is_isotropic(S, P, obj):
            raise NonIsotropicError(f"sub {S} ({obj.describe(S)}) is not isotropic")
    P_E = hilbert_polynomial(obj.total())
    out = []
    for S in subs:
        perp = annihilator(S, P, obj)
        diff = obj.hilbert(S) + obj.hilbert(perp) - P_E
        out.append(OrthogonalVerdict(S, perp, diff, eventually_compare(diff, UniPoly())))
    return out


@dataclass(frozen=True)
class ParabolicVerdict:
    """``witness`` is the first chain member whose annihilator is not where the
    order-reversing pattern wants it; ``expected`` is what should have been there."""

    compatible: bool
    witness: AdmissibleSub | None = None
    witness_annihilator: AdmissibleSub | None = None
    expected: AdmissibleSub | None = None
    annihilator_is_step: bool = False

    def __bool__(self):
        return self.compatible


def filtration_matches_parabolic(steps, P: PairingStructure,
                                 obj: SumObject) -> ParabolicVerdict:
    """Whether the flag ``0 ⊂ F_1 ⊂ ... ⊂ E`` is self-dual under the pairing.

    The chain is augmented with 0 and the whole object; it matches a parabolic
    reduction iff the annihilator reverses it, ``F_i^⊥ = F_{n-i}``.
    """
    steps = [obj.check(S) for S in steps]
    if steps and steps[0] == obj.zero():
        steps = steps[1:]
    chain = [obj.zero(), *steps]
    if chain[-1] != obj.full():
        chain.append(obj.full())
    for a, b in zip(chain, chain[1:]):
        if not a < b:
            raise PairingError(f"filtration steps must strictly increase: {a} then {b}")
    n = len(chain) - 1
    for i, S in enumerate(chain):
        perp = annihilator(S, P, obj)
        if perp != chain[n - i]:
            return ParabolicVerdict(False, S, perp, chain[n - i], perp in chain)
    return ParabolicVerdict(True)
