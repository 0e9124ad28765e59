"""Drift of closed curves in a plane with weighted punctures.

A Birkhoff section defines an infinite cyclic cover whose classifying
homomorphism on the punctured orbit space is determined by its values on
small counterclockwise loops around the punctures (the local drifts). This
module evaluates that homomorphism on polygonal curves with exact rational
vertices, and builds the su-rectangle attached to a (++) lozenge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from aoc.rational import Q
from aoc.strip_plane import LozengeType, ModelKind, PlaneModel, PlanePoint, Lozenge
from aoc.torus_homology import BoundaryInvariant
from aoc.verdict import AocError, Verdict


class PointOnCurve(AocError, ValueError):
    pass


class NotSimple(AocError, ValueError):
    pass


class NotCCW(AocError, ValueError):
    pass


class MissingInvariant(AocError, ValueError):
    pass


class WrongModel(AocError, ValueError):
    pass


class WrongLozengeType(AocError, ValueError):
    pass


class PointNotInLozenge(AocError, ValueError):
    pass


class InvalidDeckCount(AocError, ValueError):
    pass


def _sign(n) -> int:
    return (n > 0) - (n < 0)


@dataclass(frozen=True)
class Puncture:
    position: PlanePoint
    local_drift: int
    invariant: BoundaryInvariant | None = None

    def __post_init__(self):
        if isinstance(self.local_drift, bool) or not isinstance(self.local_drift, int):
            raise TypeError("local_drift must be an integer")
        if self.local_drift == 0:
            raise ValueError("local drift must be nonzero")


@dataclass(frozen=True)
class PuncturedCover:
    punctures: tuple[Puncture, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "punctures", tuple(self.punctures))
        seen = set()
        for pu in self.punctures:
            key = (pu.position.x, pu.position.y)
            if key in seen:
                raise ValueError(f"two punctures at ({key[0]}, {key[1]})")
            seen.add(key)


@dataclass(frozen=True)
class PolyCurve:
    """Closed polygonal curve; the last vertex connects back to the first."""

    vertices: tuple[PlanePoint, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise ValueError("a closed polygonal curve needs at least 3 vertices")

    @classmethod
    def of(cls, points: Iterable) -> PolyCurve:
        return cls(tuple(p if isinstance(p, PlanePoint) else PlanePoint(*p) for p in points))

    def edges(self):
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def reversed(self) -> PolyCurve:
        return PolyCurve(self.vertices[::-1])

    def concat(self, other: PolyCurve) -> PolyCurve:
        """Loop product of two curves based at the same first vertex."""
        if self.vertices[0] != other.vertices[0]:
            raise ValueError("concatenated loops must share their base vertex")
        return PolyCurve(self.vertices + other.vertices)

    def signed_area2(self) -> Q:
        return sum((a.x * b.y - b.x * a.y for a, b in self.edges()), Q(0))


@dataclass(frozen=True)
class SuRectangle:
    eta1: PlanePoint
    g_eta1: PlanePoint
    g_eta2: PlanePoint
    eta2: PlanePoint

    def boundary(self) -> PolyCurve:
        return PolyCurve((self.eta1, self.g_eta1, self.g_eta2, self.eta2))


def _cross(o: PlanePoint, a: PlanePoint, b: PlanePoint) -> Q:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _on_segment(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> bool:
    return (
        _cross(a, b, p) == 0
        and min(a.x, b.x) <= p.x <= max(a.x, b.x)
        and min(a.y, b.y) <= p.y <= max(a.y, b.y)
    )


def on_curve(curve: PolyCurve, point: PlanePoint) -> bool:
    return any(_on_segment(point, a, b) for a, b in curve.edges())


def winding_number(curve: PolyCurve, point: PlanePoint) -> int:
    """Winding number by signed crossings of the ray from ``point`` toward +x.

    An edge counts when exactly one endpoint lies strictly above the ray,
    which settles vertices sitting on the ray.
    """
    if on_curve(curve, point):
        raise PointOnCurve(f"({point.x}, {point.y}) lies on the curve")
    w = 0
    for a, b in curve.edges():
        if a.y <= point.y < b.y:
            if _cross(a, b, point) > 0:
                w += 1
        elif b.y <= point.y < a.y:
            if _cross(a, b, point) < 0:
                w -= 1
    return w


def drift(curve: PolyCurve, cover: PuncturedCover) -> int:
    return sum(winding_number(curve, pu.position) * pu.local_drift for pu in cover.punctures)


def _segments_intersect(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> bool:
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    if _sign(d1) * _sign(d2) < 0 and _sign(d3) * _sign(d4) < 0:
        return True
    return (
        (d1 == 0 and _on_segment(a, c, d))
        or (d2 == 0 and _on_segment(b, c, d))
        or (d3 == 0 and _on_segment(c, a, b))
        or (d4 == 0 and _on_segment(d, a, b))
    )


def is_simple(curve: PolyCurve) -> bool:
    vs = curve.vertices
    n = len(vs)
    if len(set((v.x, v.y) for v in vs)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            a, b = vs[i], vs[(i + 1) % n]
            c, d = vs[j], vs[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges share one vertex and may only meet there
                if j == i + 1:
                    far1, shared, far2 = a, b, d
                else:
                    far1, shared, far2 = b, a, c
                if _cross(shared, far1, far2) == 0 and (
                    _on_segment(far2, shared, far1) or _on_segment(far1, shared, far2)
                ):
                    return False
                continue
            if _segments_intersect(a, b, c, d):
                return False
    return True


def _require_simple_ccw(curve: PolyCurve) -> None:
    if not is_simple(curve):
        raise NotSimple("curve is not simple")
    if curve.signed_area2() <= 0:
        raise NotCCW("curve is not counterclockwise")


def encloses(curve: PolyCurve, point: PlanePoint) -> bool:
    """Even-odd point-in-polygon test, independent of the winding count."""
    if on_curve(curve, point):
        raise PointOnCurve(f"({point.x}, {point.y}) lies on the curve")
    inside = False
    for a, b in curve.edges():
        if (a.y > point.y) != (b.y > point.y):
            x_at = a.x + (point.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if point.x < x_at:
                inside = not inside
    return inside


def enclosed_punctures(curve: PolyCurve, cover: PuncturedCover) -> list[Puncture]:
    return [pu for pu in cover.punctures if encloses(curve, pu.position)]


def local_drift_sum_check(simple_ccw_curve: PolyCurve, cover: PuncturedCover) -> Verdict:
    """Compare the drift of a simple CCW curve with the sum of enclosed local drifts."""
    _require_simple_ccw(simple_ccw_curve)
    lhs = drift(simple_ccw_curve, cover)
    rhs = sum(pu.local_drift for pu in enclosed_punctures(simple_ccw_curve, cover))
    if lhs == rhs:
        return Verdict.accept(drift=lhs, local_sum=rhs)
    return Verdict.reject("LocalDriftMismatch", drift=lhs, local_sum=rhs)


def sign_consistency(puncture: Puncture) -> Verdict:
    """Local drift and multiplicity must carry opposite signs."""
    if puncture.invariant is None:
        raise MissingInvariant("puncture carries no boundary invariant")
    mult = puncture.invariant.mult
    if _sign(puncture.local_drift) == -_sign(mult) and mult != 0:
        return Verdict.accept(local_drift=puncture.local_drift, mult=mult)
    return Verdict.reject("SignLawViolated", local_drift=puncture.local_drift, mult=mult)


def witness_positive_boundary(simple_ccw_curve: PolyCurve, cover: PuncturedCover) -> Puncture | None:
    """An enclosed puncture with negative local drift when the curve drifts negatively.

    Ties go to the first such puncture in cover order.
    """
    _require_simple_ccw(simple_ccw_curve)
    inside = enclosed_punctures(simple_ccw_curve, cover)
    for pu in inside:
        if pu.invariant is None:
            raise MissingInvariant(f"enclosed puncture at ({pu.position.x}, {pu.position.y}) has no invariant")
    if drift(simple_ccw_curve, cover) >= 0:
        return None
    for pu in inside:
        if pu.local_drift < 0:
            return pu
    raise AssertionError("negative drift without a negative local drift")


def _to_param(s: Q) -> Q:
    # normalised leaf position s in (0, 1) -> u in (0, inf)
    return s / (1 - s)


def _from_param(u: Q) -> Q:
    return u / (1 + u)


def su_rectangle_from_lozenge(model: PlaneModel, loz: Lozenge, eta: PlanePoint) -> SuRectangle:
    """su-rectangle spanned by ``eta`` inside a (++) lozenge of the positive strip.

    The deck element fixing the corners is modelled on each side of the
    lozenge through the parameter u = s/(1-s) of the normalised position s:
    it doubles u measured from the first corner and halves u measured from
    the second corner.
    """
    if model.kind is not ModelKind.POSITIVE_STRIP:
        raise WrongModel("su-rectangles are built in the positive strip")
    if loz.lozenge_type is not LozengeType.PLUS_PLUS:
        raise WrongLozengeType("su-rectangles need a (++) lozenge")
    if not loz.contains(eta):
        raise PointNotInLozenge(f"({eta.x}, {eta.y}) is not inside the lozenge")
    x0, y0 = loz.corner1.x, loz.corner1.y
    x1, y1 = loz.corner2.x, loz.corner2.y
    width = x1 - x0

    eta1 = PlanePoint(eta.x, y0)
    eta2 = PlanePoint(eta.x, y1)
    s1 = (eta1.x - x0) / width
    g_s1 = _from_param(2 * _to_param(s1))
    s2 = (x1 - eta2.x) / width
    g_s2 = _from_param(_to_param(s2) / 2)
    g_eta1 = PlanePoint(x0 + g_s1 * width, y0)
    g_eta2 = PlanePoint(x1 - g_s2 * width, y1)
    return SuRectangle(eta1, g_eta1, g_eta2, eta2)


def rectangle_boundary_drift(n1: int, n2: int) -> int:
    """Drift of the lifted su-rectangle boundary, -(n1 + n2)."""
    if n1 < 1 or n2 < 1:
        raise InvalidDeckCount(f"deck counts must be >= 1, got ({n1}, {n2})")
    return -(n1 + n2)

