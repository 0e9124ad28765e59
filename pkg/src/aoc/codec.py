"""JSON schemas for scenario files and the encoders used in reports.

Scenario documents look like::

    {"schema": "aoc/1", "command": "sections", "payload": {...}}

Unknown fields are rejected everywhere. Rationals travel as strings
``"p/q"`` in lowest terms (``"-2"`` for integers); integers as JSON numbers.
"""

from __future__ import annotations

import numbers
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, field_validator

from aoc.drift_cover import PolyCurve, Puncture, PuncturedCover, SuRectangle
from aoc.measured_holonomy import CrossingEvent, FoliationModel, LambdaLength, SingularityData
from aoc.rational import format_rational, parse_rational
from aoc.sections import BoundaryComponent, IntersectionData, SectionSpec
from aoc.strip_plane import Lozenge, LozengeType, PlanePoint
from aoc.torus_homology import BoundaryInvariant

SCHEMA_VERSION = "aoc/1"
COMMANDS = ("surgery", "strip", "drift", "holonomy", "sections")

RationalText = Union[StrictStr, StrictInt]


def _rational(v: RationalText) -> str:
    # normalise to canonical text; ParseError surfaces as a schema error
    return format_rational(parse_rational(str(v)))


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class PointDoc(Strict):
    x: RationalText
    y: RationalText

    _norm = field_validator("x", "y")(_rational)


class InvariantDoc(Strict):
    mult: StrictInt
    link: StrictInt
    period: StrictInt = 1


class ComponentDoc(Strict):
    orbit: StrictStr
    mult: StrictInt
    link: StrictInt
    period: StrictInt = 1


class SectionDoc(Strict):
    name: StrictStr
    kind: Literal["partial", "birkhoff"]
    boundary: List[ComponentDoc] = []


class IntersectionDoc(Strict):
    d1_into_2: StrictInt
    d2_into_1: StrictInt
    links: Dict[str, StrictInt] = {}


class PunctureDoc(Strict):
    position: PointDoc
    local_drift: StrictInt
    invariant: Optional[InvariantDoc] = None


class TermDoc(Strict):
    coeff: RationalText
    exp: StrictInt

    _norm = field_validator("coeff")(_rational)


class EventDoc(Strict):
    singularity: StrictStr
    side: Literal["right", "left"]
    split: RationalText
    u_position: RationalText

    _norm = field_validator("split", "u_position")(_rational)


class SingularityDoc(Strict):
    mult: StrictInt
    link: StrictInt
    period: StrictInt = 1


class FoliationDoc(Strict):
    singularities: Dict[str, SingularityDoc]
    lambda_hint: Optional[RationalText] = None

    @field_validator("lambda_hint")
    @classmethod
    def _hint(cls, v):
        return None if v is None else _rational(v)


class LozengeDoc(Strict):
    corner1: PointDoc
    corner2: PointDoc
    type: Literal["++", "+-"]


# payloads, keyed by (command, action)

class SurgeryPayload(Strict):
    mult: StrictInt
    link: StrictInt
    period: StrictInt = 1
    k: StrictInt


class StripClassifyPayload(Strict):
    model: Literal["trivial", "positive", "negative"]


class StripLozengePayload(Strict):
    model: Literal["trivial", "positive", "negative"]
    point: PointDoc
    type: Literal["++", "+-"]
    corner: Literal[1, 2] = 1


class StripCompletePayload(Strict):
    model: Literal["trivial", "positive", "negative"]
    point: PointDoc
    quadrant: Literal["++", "+-", "-+", "--"]


class CoverPayload(Strict):
    curve: List[PointDoc]
    punctures: List[PunctureDoc] = []


class RectanglePayload(Strict):
    n1: StrictInt
    n2: StrictInt
    lozenge: Optional[LozengeDoc] = None
    eta: Optional[PointDoc] = None


class ExponentPayload(Strict):
    mult: StrictInt
    link: StrictInt
    period: StrictInt = 1
    side: Literal["right", "left"]


class ComposePayload(Strict):
    foliation: FoliationDoc
    length: List[TermDoc] = [TermDoc(coeff="1", exp=0)]
    events: List[EventDoc] = []
    tail: Optional[List[EventDoc]] = None


class ContractPayload(Strict):
    foliation: FoliationDoc
    length: List[TermDoc] = [TermDoc(coeff="1", exp=0)]
    events: List[EventDoc]


class SectionPayload(Strict):
    section: SectionDoc


class LinkEqPayload(Strict):
    data: IntersectionDoc


class ExcludePayload(Strict):
    s1: SectionDoc
    s2: SectionDoc
    data: IntersectionDoc


class ClassifyPayload(Strict):
    evidence: List[SectionDoc]


PAYLOADS: dict[tuple[str, str | None], type[Strict]] = {
    ("surgery", None): SurgeryPayload,
    ("strip", "classify"): StripClassifyPayload,
    ("strip", "lozenge"): StripLozengePayload,
    ("strip", "complete"): StripCompletePayload,
    ("drift", "eval"): CoverPayload,
    ("drift", "check-local"): CoverPayload,
    ("drift", "witness"): CoverPayload,
    ("drift", "rectangle"): RectanglePayload,
    ("holonomy", "exponent"): ExponentPayload,
    ("holonomy", "compose"): ComposePayload,
    ("holonomy", "contract"): ContractPayload,
    ("sections", "validate"): SectionPayload,
    ("sections", "link-eq"): LinkEqPayload,
    ("sections", "exclude"): ExcludePayload,
    ("sections", "classify"): ClassifyPayload,
    ("sections", "positivize"): SectionPayload,
}


class Scenario(Strict):
    version: Literal["aoc/1"] = Field(alias="schema")
    command: Literal["surgery", "strip", "drift", "holonomy", "sections"]
    payload: Dict[str, Any]


def parse_payload(command: str, action: str | None, payload: dict) -> Strict:
    return PAYLOADS[(command, action)].model_validate(payload)


# doc -> domain

def point(doc: PointDoc) -> PlanePoint:
    return PlanePoint(parse_rational(str(doc.x)), parse_rational(str(doc.y)))


def invariant(doc: InvariantDoc) -> BoundaryInvariant:
    return BoundaryInvariant(doc.mult, doc.link, doc.period)


def section(doc: SectionDoc) -> SectionSpec:
    comps = tuple(
        BoundaryComponent(c.orbit, BoundaryInvariant(c.mult, c.link, c.period)) for c in doc.boundary
    )
    return SectionSpec(doc.name, doc.kind, comps)


def intersection(doc: IntersectionDoc) -> IntersectionData:
    return IntersectionData(doc.d1_into_2, doc.d2_into_1, dict(doc.links))


def cover(doc: CoverPayload) -> tuple[PolyCurve, PuncturedCover]:
    curve = PolyCurve(tuple(point(p) for p in doc.curve))
    punctures = tuple(
        Puncture(point(p.position), p.local_drift, invariant(p.invariant) if p.invariant else None)
        for p in doc.punctures
    )
    return curve, PuncturedCover(punctures)


def length(terms: List[TermDoc]) -> LambdaLength:
    out = LambdaLength()
    for t in terms:
        out = out + LambdaLength({t.exp: parse_rational(str(t.coeff))})
    return out


def event(doc: EventDoc) -> CrossingEvent:
    return CrossingEvent(doc.singularity, doc.side, parse_rational(str(doc.split)),
                         parse_rational(str(doc.u_position)))


def foliation(doc: FoliationDoc) -> FoliationModel:
    sings = {k: SingularityData(v.mult, v.link, v.period) for k, v in doc.singularities.items()}
    hint = parse_rational(str(doc.lambda_hint)) if doc.lambda_hint is not None else None
    return FoliationModel(sings, hint)


def lozenge(doc: LozengeDoc) -> Lozenge:
    return Lozenge(point(doc.corner1), point(doc.corner2), LozengeType(doc.type))


# domain -> JSON

def encode_point(p: PlanePoint) -> dict:
    return {"x": format_rational(p.x), "y": format_rational(p.y)}


def encode_length(ln: LambdaLength) -> list[dict]:
    return [{"coeff": format_rational(c), "exp": e} for e, c in ln.terms.items()]


def encode_lozenge(loz: Lozenge) -> dict:
    return {
        "corner1": encode_point(loz.corner1),
        "corner2": encode_point(loz.corner2),
        "type": loz.lozenge_type.value,
    }


def encode_invariant(inv: BoundaryInvariant) -> dict:
    return {"mult": inv.mult, "link": inv.link, "period": inv.period}


def encode_section(s: SectionSpec) -> dict:
    return {
        "name": s.name,
        "kind": s.kind.value,
        "boundary": [{"orbit": bc.orbit, **encode_invariant(bc.invariant)} for bc in s.boundary],
    }


def encode_puncture(pu: Puncture) -> dict:
    doc = {"position": encode_point(pu.position), "local_drift": pu.local_drift}
    if pu.invariant is not None:
        doc["invariant"] = encode_invariant(pu.invariant)
    return doc


def encode_rectangle(r: SuRectangle) -> dict:
    return {k: encode_point(getattr(r, k)) for k in ("eta1", "g_eta1", "g_eta2", "eta2")}


def encode_event(ev: CrossingEvent) -> dict:
    return {
        "singularity": ev.singularity,
        "side": ev.side.value,
        "split": format_rational(ev.split),
        "u_position": format_rational(ev.u_position),
    }


def jsonable(value: Any) -> Any:
    """Recursively turn verdict details into JSON-ready values."""
    if isinstance(value, bool):
        return value
    if isinstance(value, numbers.Integral):
        # mpz as well as int; past 2**53 JSON readers lose digits
        value = int(value)
        return str(value) if abs(value) >= 2**53 else value
    if isinstance(value, numbers.Rational):
        return format_rational(value)
    if isinstance(value, LambdaLength):
        return encode_length(value)
    if isinstance(value, PlanePoint):
        return encode_point(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value
