"""Model bifoliated planes of R-covered Anosov flows.

Three models, all carrying the horizontal (stable) and vertical (unstable)
foliations of the plane:

* ``TRIVIAL``: the whole plane,
* ``POSITIVE_STRIP``: the open strip ``|x - y| < 1``,
* ``NEGATIVE_STRIP``: the open strip ``|x + y| < 1``.

Stable leaves are oriented by +x and unstable leaves by +y. Every leaf of a
strip model is a bounded open segment, so all queries reduce to comparisons
of rational interval endpoints.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from aoc.rational import Q, as_rational
from aoc.verdict import AocError


class PointOutsideModel(AocError, ValueError):
    pass


class ModelKind(enum.Enum):
    TRIVIAL = "trivial"
    POSITIVE_STRIP = "positive"
    NEGATIVE_STRIP = "negative"


class FlowNature(enum.Enum):
    NON_TWISTED_SUSPENSION = "non-twisted-suspension"
    POSITIVELY_TWISTED = "positively-twisted"
    NEGATIVELY_TWISTED = "negatively-twisted"
    FLAT = "flat"
    UNDETERMINED = "undetermined"


class LozengeType(enum.Enum):
    PLUS_PLUS = "++"
    PLUS_MINUS = "+-"


@dataclass(frozen=True)
class PlanePoint:
    x: Q
    y: Q

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class PlaneModel:
    kind: ModelKind

    def contains(self, p: PlanePoint) -> bool:
        if self.kind is ModelKind.POSITIVE_STRIP:
            return -1 < p.x - p.y < 1
        if self.kind is ModelKind.NEGATIVE_STRIP:
            return -1 < p.x + p.y < 1
        return True

    def require(self, *points: PlanePoint) -> None:
        for p in points:
            if not self.contains(p):
                raise PointOutsideModel(f"({p.x}, {p.y}) is not in the {self.kind.value} model")

    def stable_leaf(self, p: PlanePoint) -> Span:
        """x-extent of the horizontal leaf through ``p``."""
        if self.kind is ModelKind.POSITIVE_STRIP:
            return Span(p.y - 1, p.y + 1)
        if self.kind is ModelKind.NEGATIVE_STRIP:
            return Span(-p.y - 1, -p.y + 1)
        return Span(None, None)

    def unstable_leaf(self, p: PlanePoint) -> Span:
        """y-extent of the vertical leaf through ``p``."""
        if self.kind is ModelKind.POSITIVE_STRIP:
            return Span(p.x - 1, p.x + 1)
        if self.kind is ModelKind.NEGATIVE_STRIP:
            return Span(-p.x - 1, -p.x + 1)
        return Span(None, None)

    def half_stable(self, p: PlanePoint, sign: int) -> Span:
        if self.kind is ModelKind.TRIVIAL:
            return Span(p.x, None) if sign > 0 else Span(None, p.x)
        # far end of the leaf: |x -/+ y0| = 1 solved on the chosen side
        y0 = p.y if self.kind is ModelKind.POSITIVE_STRIP else -p.y
        return Span(p.x, y0 + 1) if sign > 0 else Span(y0 - 1, p.x)

    def half_unstable(self, p: PlanePoint, sign: int) -> Span:
        if self.kind is ModelKind.TRIVIAL:
            return Span(p.y, None) if sign > 0 else Span(None, p.y)
        x0 = p.x if self.kind is ModelKind.POSITIVE_STRIP else -p.x
        return Span(p.y, x0 + 1) if sign > 0 else Span(x0 - 1, p.y)


TRIVIAL = PlaneModel(ModelKind.TRIVIAL)
POSITIVE_STRIP = PlaneModel(ModelKind.POSITIVE_STRIP)
NEGATIVE_STRIP = PlaneModel(ModelKind.NEGATIVE_STRIP)


class Span(NamedTuple):
    """Open interval; ``None`` stands for an infinite end."""

    lo: Q | None
    hi: Q | None

    def contains(self, v: Q) -> bool:
        return (self.lo is None or self.lo < v) and (self.hi is None or v < self.hi)

    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None


@dataclass(frozen=True)
class Lozenge:
    corner1: PlanePoint
    corner2: PlanePoint
    lozenge_type: LozengeType

    def contains(self, p: PlanePoint) -> bool:
        lo_x, hi_x = sorted((self.corner1.x, self.corner2.x))
        lo_y, hi_y = sorted((self.corner1.y, self.corner2.y))
        return lo_x < p.x < hi_x and lo_y < p.y < hi_y


@dataclass(frozen=True)
class QuadrantResult:
    complete: bool
    witness: tuple[PlanePoint, PlanePoint] | None = None

    def __bool__(self) -> bool:
        return self.complete


def _sign(s: int | str) -> int:
    if s in (1, "+"):
        return 1
    if s in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1/-1 or '+'/'-', got {s!r}")


def parse_quadrant(q) -> tuple[int, int]:
    if isinstance(q, str):
        if len(q) != 2:
            raise ValueError(f"quadrant must look like '+-', got {q!r}")
        return _sign(q[0]), _sign(q[1])
    sigma, tau = q
    return _sign(sigma), _sign(tau)


def leaves_intersect(model: PlaneModel, p: PlanePoint, q: PlanePoint) -> PlanePoint | None:
    """The point where the unstable leaf of ``p`` meets the stable leaf of ``q``."""
    model.require(p, q)
    if not model.unstable_leaf(p).contains(q.y):
        return None
    if not model.stable_leaf(q).contains(p.x):
        return None
    return PlanePoint(p.x, q.y)


def _diff_range(kind: ModelKind, xs: Span, ys: Span) -> Span:
    """Range of the strip's defining linear form over the open box xs * ys."""
    if kind is ModelKind.POSITIVE_STRIP:
        return Span(xs.lo - ys.hi, xs.hi - ys.lo)
    return Span(xs.lo + ys.lo, xs.hi + ys.hi)


def quadrant_complete(model: PlaneModel, p: PlanePoint, quadrant) -> QuadrantResult:
    """Decide whether every pair of leaves issued from the quadrant meets.

    For y on the stable half-leaf of sign sigma and z on the unstable
    half-leaf of sign tau, the leaves L^u(y) and L^s(z) meet at
    (y.x, z.y); the quadrant is complete when all those points are in the
    model. On failure a rational witness (y, z) is returned.
    """
    model.require(p)
    sigma, tau = parse_quadrant(quadrant)
    if model.kind is ModelKind.TRIVIAL:
        return QuadrantResult(True)
    xs = model.half_stable(p, sigma)
    ys = model.half_unstable(p, tau)
    form = _diff_range(model.kind, xs, ys)
    if form.hi <= 1 and form.lo >= -1:
        return QuadrantResult(True)

    # Walk both coordinates toward the ends of the box that push the form
    # past the strip boundary: t = 9/10, 99/100, ...
    too_high = form.hi > 1
    if model.kind is ModelKind.POSITIVE_STRIP:
        a_end, b_end = (xs.hi, ys.lo) if too_high else (xs.lo, ys.hi)
    else:
        a_end, b_end = (xs.hi, ys.hi) if too_high else (xs.lo, ys.lo)
    a_start = xs.lo if a_end == xs.hi else xs.hi
    b_start = ys.lo if b_end == ys.hi else ys.hi
    t = Q(9, 10)
    while True:
        a = a_start + t * (a_end - a_start)
        b = b_start + t * (b_end - b_start)
        if not model.contains(PlanePoint(a, b)):
            return QuadrantResult(False, (PlanePoint(a, p.y), PlanePoint(p.x, b)))
        t = 1 - (1 - t) / 10


def sector_box(model: PlaneModel, p: PlanePoint, quadrant) -> tuple[Span, Span]:
    """Box whose intersection with the model is S_{sigma,tau}(p)."""
    sigma, tau = parse_quadrant(quadrant)
    return model.half_stable(p, sigma), model.half_unstable(p, tau)


def _clip(poly, a: Q, b: Q, c: Q):
    """Sutherland-Hodgman clip of a convex polygon to a*x + b*y <= c."""
    out = []
    n = len(poly)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        fc = a * cur[0] + b * cur[1] - c
        fn = a * nxt[0] + b * nxt[1] - c
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def _canonical(poly) -> frozenset:
    pts = []
    for v in poly:
        if not pts or pts[-1] != v:
            pts.append(v)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    n = len(pts)
    keep = []
    for i in range(n):
        u, v, w = pts[i - 1], pts[i], pts[(i + 1) % n]
        cross = (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])
        if cross != 0:
            keep.append(v)
    return frozenset(keep)


def clipped_region(model: PlaneModel, xs: Span, ys: Span) -> frozenset:
    """Vertex set of the closure of (xs * ys) intersected with the model."""
    poly = [(xs.lo, ys.lo), (xs.hi, ys.lo), (xs.hi, ys.hi), (xs.lo, ys.hi)]
    if model.kind is ModelKind.POSITIVE_STRIP:
        poly = _clip(poly, Q(1), Q(-1), Q(1))
        poly = _clip(poly, Q(-1), Q(1), Q(1))
    elif model.kind is ModelKind.NEGATIVE_STRIP:
        poly = _clip(poly, Q(1), Q(1), Q(1))
        poly = _clip(poly, Q(-1), Q(-1), Q(1))
    return _canonical(poly)


_CORNER_QUADRANTS = {
    (LozengeType.PLUS_PLUS, 1): (1, 1),
    (LozengeType.PLUS_PLUS, 2): (-1, -1),
    (LozengeType.PLUS_MINUS, 1): (1, -1),
    (LozengeType.PLUS_MINUS, 2): (-1, 1),
}


def lozenge_at(
    model: PlaneModel, p: PlanePoint, lozenge_type: LozengeType, corner: int = 1
) -> Lozenge | None:
    """Lozenge of the given type having ``p`` as its first (or second) corner.

    ``corner=1`` looks at S_{++}(p) (resp. S_{+-}(p)); ``corner=2`` at
    S_{--}(p) (resp. S_{-+}(p)). The candidate opposite corner is the far
    corner of the sector box; the lozenge exists when that point is in the
    model and its opposite sector cuts out the same open set.
    """
    model.require(p)
    lozenge_type = LozengeType(lozenge_type)
    sigma, tau = _CORNER_QUADRANTS[(lozenge_type, corner)]
    xs, ys = sector_box(model, p, (sigma, tau))
    if not (xs.bounded() and ys.bounded()):
        return None
    q = PlanePoint(xs.hi if sigma > 0 else xs.lo, ys.hi if tau > 0 else ys.lo)
    if not model.contains(q):
        return None
    xs2, ys2 = sector_box(model, q, (-sigma, -tau))
    # equal boxes cut out equal sets; otherwise compare the clipped polygons
    if (xs, ys) != (xs2, ys2) and clipped_region(model, xs, ys) != clipped_region(model, xs2, ys2):
        return None
    if corner == 1:
        return Lozenge(p, q, lozenge_type)
    return Lozenge(q, p, lozenge_type)


def lozenge_census(model: PlaneModel, probe: PlanePoint | None = None) -> set[LozengeType]:
    """Lozenge types admitted at ``probe`` (the origin by default)."""
    probe = probe if probe is not None else PlanePoint(0, 0)
    return {t for t in LozengeType if lozenge_at(model, probe, t) is not None}


def classify_model(model: PlaneModel) -> FlowNature:
    census = lozenge_census(model)
    if not census:
        return FlowNature.NON_TWISTED_SUSPENSION
    if census == {LozengeType.PLUS_PLUS}:
        return FlowNature.POSITIVELY_TWISTED
    if census == {LozengeType.PLUS_MINUS}:
        return FlowNature.NEGATIVELY_TWISTED
    raise AssertionError(f"model {model.kind.value} admits both lozenge types")
