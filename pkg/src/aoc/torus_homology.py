"""Homology arithmetic on the boundary torus of a blown-up closed orbit.

Classes are written in the basis ([parallel], [meridian]). For a boundary
component of a section the parallel coefficient is its multiplicity and the
meridian coefficient is its linking number.

The intersection form is normalised so that [parallel] . [meridian] = +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from aoc.verdict import AocError, Verdict


class NonNegativeLink(AocError, ValueError):
    """Raised when an operation needs a strictly negative linking number."""


class InvalidBoundaryClass(AocError, ValueError):
    pass


@dataclass(frozen=True)
class TorusHomologyClass:
    along_parallel: int
    along_meridian: int

    def __post_init__(self):
        for name in ("along_parallel", "along_meridian"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an integer, got {value!r}")

    def __neg__(self) -> TorusHomologyClass:
        return TorusHomologyClass(-self.along_parallel, -self.along_meridian)

    def __add__(self, other: TorusHomologyClass) -> TorusHomologyClass:
        return TorusHomologyClass(
            self.along_parallel + other.along_parallel,
            self.along_meridian + other.along_meridian,
        )


@dataclass(frozen=True)
class BoundaryInvariant:
    """(multiplicity, linking number, period) of a closed orbit on a section boundary.

    ``mult == 0`` is representable so that admissibility checks can report it.
    """

    mult: int
    link: int
    period: int = 1

    def __post_init__(self):
        for name in ("mult", "link", "period"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an integer, got {value!r}")
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")

    def as_class(self) -> TorusHomologyClass:
        return TorusHomologyClass(self.mult, self.link)


def validate_boundary_class(c: TorusHomologyClass, *, embedded: bool = False) -> None:
    """Raise unless ``c`` can be the class of a section boundary component.

    Coprimality is only required for embedded (simple) curves.
    """
    if c.along_parallel == 0:
        raise InvalidBoundaryClass("boundary class must have nonzero multiplicity")
    if embedded and gcd(c.along_parallel, c.along_meridian) != 1:
        raise InvalidBoundaryClass(
            f"embedded boundary class ({c.along_parallel}, {c.along_meridian}) is not primitive"
        )


def intersection_form(c1: TorusHomologyClass, c2: TorusHomologyClass) -> int:
    return c1.along_parallel * c2.along_meridian - c1.along_meridian * c2.along_parallel


def surgery_transform(c: TorusHomologyClass, k: int) -> TorusHomologyClass:
    """Re-read ``c`` after a Fried-Goodman surgery of coefficient ``k``.

    The new meridian is [meridian] + k[parallel]; the parallel is unchanged,
    so (m, l) becomes (m - k*l, l).
    """
    return TorusHomologyClass(c.along_parallel - k * c.along_meridian, c.along_meridian)


def surgery_invariant(inv: BoundaryInvariant, k: int) -> BoundaryInvariant:
    c = surgery_transform(inv.as_class(), k)
    return BoundaryInvariant(c.along_parallel, c.along_meridian, inv.period)


def positivizing_coefficient(inv: BoundaryInvariant) -> int:
    """Smallest k >= 0 with ``mult - k*link > 0``."""
    if inv.link >= 0:
        raise NonNegativeLink(f"positivization needs link < 0, got link={inv.link}")
    if inv.mult > 0:
        return 0
    # mult + k*|link| > 0  <=>  k > -mult / |link|
    return (-inv.mult) // (-inv.link) + 1


def check_partial_admissible(inv: BoundaryInvariant, is_birkhoff: bool) -> Verdict:
    if inv.mult == 0:
        return Verdict.reject("ZeroMultiplicity", mult=inv.mult, link=inv.link)
    if inv.link > 0:
        return Verdict.reject("PositiveLink", mult=inv.mult, link=inv.link)
    if is_birkhoff and inv.link == 0:
        return Verdict.reject("ZeroLinkOnBirkhoff", mult=inv.mult, link=inv.link)
    return Verdict.accept(mult=inv.mult, link=inv.link)
