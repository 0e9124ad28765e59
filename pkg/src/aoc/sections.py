"""Invariant algebra of partial sections and Birkhoff sections.

This is a certificate checker: intersection numbers between sections are
supplied as data and checked against every sign and linking constraint a
pair of sections must satisfy.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from aoc.strip_plane import FlowNature, LozengeType
from aoc.torus_homology import (
    BoundaryInvariant,
    check_partial_admissible,
    positivizing_coefficient,
    surgery_invariant,
)
from aoc.verdict import AocError, Verdict


class InvalidSection(AocError, ValueError):
    def __init__(self, section: str, rule: str, detail: str = ""):
        self.section = section
        self.rule = rule
        super().__init__(f"section {section!r} violates {rule}" + (f": {detail}" if detail else ""))


class SignHypothesisUnmet(AocError, ValueError):
    pass


class OrbitNotShared(AocError, ValueError):
    pass


class InconsistentData(AocError, ValueError):
    pass


class MutuallyExclusiveError(AocError):
    def __init__(self, first: str, second: str, reason: str):
        self.pair = (first, second)
        self.reason = reason
        super().__init__(f"{first!r} and {second!r} cannot coexist: {reason}")


class SectionKind(enum.Enum):
    PARTIAL = "partial"
    BIRKHOFF = "birkhoff"


class SectionSign(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    MIXED = "mixed"
    GLOBAL = "global"


class LinkConstraint(enum.Enum):
    NON_NEGATIVE = "non-negative"
    STRICTLY_POSITIVE = "strictly-positive"


@dataclass(frozen=True)
class BoundaryComponent:
    orbit: str
    invariant: BoundaryInvariant


@dataclass(frozen=True)
class SectionSpec:
    name: str
    kind: SectionKind
    boundary: tuple[BoundaryComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", SectionKind(self.kind))
        object.__setattr__(self, "boundary", tuple(self.boundary))

    @property
    def is_birkhoff(self) -> bool:
        return self.kind is SectionKind.BIRKHOFF

    def orbits(self) -> list[str]:
        seen: dict[str, None] = {}
        for bc in self.boundary:
            seen.setdefault(bc.orbit)
        return list(seen)


@dataclass(frozen=True)
class IntersectionData:
    """Algebraic intersections between two sections S1 and S2.

    ``d1_into_2`` is the boundary of S1 against the interior of S2,
    ``d2_into_1`` the reverse, and ``links`` the linking numbers of the two
    sections along each shared boundary orbit.
    """

    d1_into_2: int
    d2_into_1: int
    links: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "links", dict(self.links))

    def __hash__(self):
        return hash((self.d1_into_2, self.d2_into_1, tuple(sorted(self.links.items()))))


@dataclass(frozen=True)
class Incompatible:
    reasons: tuple[str, ...]

    @property
    def final_reason(self) -> str:
        return self.reasons[-1]


@dataclass(frozen=True)
class NoVerdict:
    reason: str


def validate_section(s: SectionSpec) -> None:
    """Raise ``InvalidSection`` on the first violated type invariant."""
    for bc in s.boundary:
        v = check_partial_admissible(bc.invariant, s.is_birkhoff)
        if not v:
            raise InvalidSection(s.name, v.violation, f"orbit {bc.orbit}")
    if s.is_birkhoff:
        v = mult_well_defined(s)
        if not v:
            raise InvalidSection(s.name, v.violation, f"orbit {v.details['orbit']}")


def section_sign(s: SectionSpec) -> SectionSign:
    validate_section(s)
    if not s.boundary:
        return SectionSign.GLOBAL
    mults = [bc.invariant.mult for bc in s.boundary]
    if all(m > 0 for m in mults):
        return SectionSign.POSITIVE
    if all(m < 0 for m in mults):
        return SectionSign.NEGATIVE
    return SectionSign.MIXED


def mult_well_defined(s: SectionSpec) -> Verdict:
    """Components on one orbit must agree (Birkhoff) or differ only harmlessly (partial).

    A partial section may carry components of opposite sign on one orbit
    only when both have linking number zero.
    """
    by_orbit: dict[str, list[BoundaryInvariant]] = defaultdict(list)
    for bc in s.boundary:
        by_orbit[bc.orbit].append(bc.invariant)
    for orbit, invs in by_orbit.items():
        first = invs[0]
        for other in invs[1:]:
            if s.is_birkhoff:
                if other.mult != first.mult:
                    return Verdict.reject("MultiplicityDisagrees", orbit=orbit,
                                          values=(first.mult, other.mult))
                if other.link != first.link:
                    return Verdict.reject("LinkDisagrees", orbit=orbit,
                                          values=(first.link, other.link))
        if not s.is_birkhoff:
            for i, a in enumerate(invs):
                for b in invs[i + 1:]:
                    if (a.mult > 0) != (b.mult > 0) and (a.link != 0 or b.link != 0):
                        return Verdict.reject("OppositeSignsWithLinking", orbit=orbit,
                                              values=((a.mult, a.link), (b.mult, b.link)))
    return Verdict.accept(orbits=sorted(by_orbit))


def linking_residual(data: IntersectionData) -> int:
    return data.d1_into_2 - data.d2_into_1 + sum(data.links.values())


def linking_equation_check(data: IntersectionData) -> Verdict:
    residual = linking_residual(data)
    if residual == 0:
        return Verdict.accept(residual=0)
    return Verdict.reject("LinkingEquation", residual=residual)


def pairwise_link_constraint(s1: SectionSpec, s2: SectionSpec, orbit: str) -> LinkConstraint:
    """Required sign of the linking number of a positive s1 and a negative s2 along ``orbit``."""
    if section_sign(s1) is not SectionSign.POSITIVE or section_sign(s2) is not SectionSign.NEGATIVE:
        raise SignHypothesisUnmet(f"need positive {s1.name!r} and negative {s2.name!r}")
    if orbit not in s1.orbits() or orbit not in s2.orbits():
        raise OrbitNotShared(f"orbit {orbit!r} is not on both boundaries")
    if s1.is_birkhoff or s2.is_birkhoff:
        return LinkConstraint.STRICTLY_POSITIVE
    return LinkConstraint.NON_NEGATIVE


def _check_link_keys(s1: SectionSpec, s2: SectionSpec, data: IntersectionData) -> set[str]:
    shared = set(s1.orbits()) & set(s2.orbits())
    extra = set(data.links) - shared
    if extra:
        raise InconsistentData(f"links given for orbits not on both boundaries: {sorted(extra)}")
    missing = shared - set(data.links)
    if missing:
        raise InconsistentData(f"no linking number for shared orbits: {sorted(missing)}")
    return shared


def exclusion_verdict(s1: SectionSpec, s2: SectionSpec, data: IntersectionData):
    """Replay the mutual-exclusion argument for a pair of sections.

    Handles (positive Birkhoff, negative partial) and (global Birkhoff,
    single-signed partial). Returns ``Incompatible`` with the reasoning
    chain, or ``NoVerdict`` when the pair is of another shape. Data that
    already breaks a monotonicity sign constraint raises
    ``InconsistentData``; data breaking the linking equation is rejected the
    same way.
    """
    sign1, sign2 = section_sign(s1), section_sign(s2)
    shared = _check_link_keys(s1, s2, data)
    residual = linking_residual(data)
    if residual != 0:
        raise InconsistentData(f"linking equation fails with residual {residual}")

    if s1.is_birkhoff and sign1 is SectionSign.POSITIVE and sign2 is SectionSign.NEGATIVE:
        if data.d1_into_2 < 0:
            raise InconsistentData("boundary of a positive section meets the other interior negatively")
        if data.d2_into_1 > 0:
            raise InconsistentData("boundary of a negative section meets the other interior positively")
        for orbit, link in data.links.items():
            if link < 0:
                raise InconsistentData(f"link along {orbit!r} is negative between positive and negative sections")
        reasons = [
            f"signs force d1_into_2 = {data.d1_into_2} >= 0, d2_into_1 = {data.d2_into_1} <= 0 "
            f"and every shared link >= 0",
            "linking equation sums three non-negative terms to zero, so all vanish",
            "d2_into_1 = 0 with single-signed intersections: boundary of s2 misses the interior of s1",
        ]
        outside = [o for o in s2.orbits() if o not in shared]
        if outside:
            reasons.append(
                f"s1 is Birkhoff, so orbit {outside[0]!r} of s2 must meet its interior, "
                f"but d2_into_1 = 0 forbids it"
            )
            return Incompatible(tuple(reasons))
        reasons.append("s1 is Birkhoff, so every boundary orbit of s2 lies on the boundary of s1")
        reasons.append("shared link must be strictly positive but equation forces 0")
        return Incompatible(tuple(reasons))

    if s1.is_birkhoff and sign1 is SectionSign.GLOBAL and sign2 in (SectionSign.POSITIVE, SectionSign.NEGATIVE):
        if data.d1_into_2 != 0:
            raise InconsistentData("a global section has no boundary, so d1_into_2 must be 0")
        if sign2 is SectionSign.POSITIVE and data.d2_into_1 < 0:
            raise InconsistentData("positive boundary meets a global section negatively")
        if sign2 is SectionSign.NEGATIVE and data.d2_into_1 > 0:
            raise InconsistentData("negative boundary meets a global section positively")
        reasons = [
            "s1 has no boundary, so no shared orbits and d1_into_2 = 0",
            "linking equation forces d2_into_1 = 0",
            "s1 meets every orbit, so the single-signed boundary of s2 has d2_into_1 != 0",
        ]
        return Incompatible(tuple(reasons))

    return NoVerdict(f"pair ({sign1.value} {s1.kind.value}, {sign2.value} {s2.kind.value}) is outside the exclusion theorem")


def lozenge_annulus_signs(t: LozengeType) -> tuple[SectionSign, SectionSign]:
    """Boundary signs of the Birkhoff annulus whose trace is a lozenge of type ``t``."""
    t = LozengeType(t)
    if t is LozengeType.PLUS_PLUS:
        return SectionSign.POSITIVE, SectionSign.POSITIVE
    return SectionSign.NEGATIVE, SectionSign.NEGATIVE


def annulus_section(name: str, t: LozengeType, orbits: tuple[str, str], multiplicity: int = 1) -> SectionSpec:
    """Partial section obtained by desingularising the annulus of a lozenge.

    Desingularisation keeps the boundary multiplicities, so both components
    carry the annulus signs; linking numbers are taken to be zero.
    """
    signs = lozenge_annulus_signs(t)
    comps = tuple(
        BoundaryComponent(o, BoundaryInvariant(multiplicity if sg is SectionSign.POSITIVE else -multiplicity, 0))
        for o, sg in zip(orbits, signs)
    )
    return SectionSpec(name, SectionKind.PARTIAL, comps)


_BIRKHOFF_NATURE = {
    SectionSign.POSITIVE: FlowNature.POSITIVELY_TWISTED,
    SectionSign.GLOBAL: FlowNature.FLAT,
    SectionSign.NEGATIVE: FlowNature.NEGATIVELY_TWISTED,
}


def _conflict(a: SectionSpec, sa: SectionSign, b: SectionSpec, sb: SectionSign) -> str | None:
    """Reason why a Birkhoff section ``a`` excludes section ``b``, if any."""
    if not a.is_birkhoff or sa not in _BIRKHOFF_NATURE:
        return None
    if b.is_birkhoff and sb in _BIRKHOFF_NATURE and sb is not sa:
        return f"{sa.value} and {sb.value} Birkhoff sections give different flow natures"
    if sa is SectionSign.POSITIVE and sb is SectionSign.NEGATIVE:
        return "a positive Birkhoff section excludes negative partial sections"
    if sa is SectionSign.NEGATIVE and sb is SectionSign.POSITIVE:
        return "a negative Birkhoff section excludes positive partial sections"
    if sa is SectionSign.GLOBAL and sb in (SectionSign.POSITIVE, SectionSign.NEGATIVE):
        return "a global section excludes single-signed partial sections"
    return None


def classify_nature(evidence: Iterable[SectionSpec]) -> FlowNature:
    """Flow nature implied by a set of sections, or ``MutuallyExclusiveError``."""
    specs = sorted(evidence, key=lambda s: (s.name, s.kind.value, repr(s.boundary)))
    signs = [section_sign(s) for s in specs]
    for i, (a, sa) in enumerate(zip(specs, signs)):
        for b, sb in zip(specs[i + 1:], signs[i + 1:]):
            reason = _conflict(a, sa, b, sb) or _conflict(b, sb, a, sa)
            if reason:
                raise MutuallyExclusiveError(a.name, b.name, reason)
    natures = {_BIRKHOFF_NATURE[sg] for s, sg in zip(specs, signs) if s.is_birkhoff and sg in _BIRKHOFF_NATURE}
    if natures:
        (nature,) = natures
        return nature
    return FlowNature.UNDETERMINED


def positivize_pipeline(s: SectionSpec) -> list[tuple[str, int]]:
    """Minimal nonnegative surgery coefficient for every boundary orbit of a Birkhoff section."""
    if not s.is_birkhoff:
        raise InvalidSection(s.name, "NotBirkhoff", "positivization needs a Birkhoff section")
    validate_section(s)
    coeffs: dict[str, int] = {}
    for bc in s.boundary:
        if bc.orbit not in coeffs:
            coeffs[bc.orbit] = positivizing_coefficient(bc.invariant)
    return list(coeffs.items())


def apply_surgeries(s: SectionSpec, coefficients: Iterable[tuple[str, int]]) -> SectionSpec:
    """The section seen after Fried-Goodman surgeries along its boundary orbits."""
    ks = dict(coefficients)
    comps = tuple(
        BoundaryComponent(bc.orbit, surgery_invariant(bc.invariant, ks.get(bc.orbit, 0)))
        for bc in s.boundary
    )
    return SectionSpec(s.name, s.kind, comps)
