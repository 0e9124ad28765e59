"""Crossing-holonomy calculus on the measured foliations of a Birkhoff section.

Stable lengths are kept as formal sums ``sum c_e * lam**e`` with rational
``c_e >= 0``, ``lam`` the dilation of the first-return map. Every verdict
that follows from ``lam > 1`` is decided from exponents and coefficient
signs; numeric evaluation is only used for reporting and cross-checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from aoc.rational import Q, as_rational
from aoc.verdict import AocError, Verdict


class UnknownSingularity(AocError, KeyError):
    pass


class NonIncreasingUPositions(AocError, ValueError):
    pass


class PreconditionViolated(AocError, ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"event {index}: {reason}")


class LengthMismatch(AocError, ValueError):
    pass


class MissingLambdaHint(AocError, ValueError):
    pass


class Side(enum.Enum):
    SINGULAR_ON_RIGHT = "right"
    SINGULAR_ON_LEFT = "left"


@dataclass(frozen=True)
class SingularityData:
    mult: int
    link: int
    period: int = 1

    def __post_init__(self):
        if self.mult == 0:
            raise ValueError("singularity multiplicity must be nonzero")
        if self.link >= 0:
            raise ValueError(f"Birkhoff boundary needs link < 0, got {self.link}")
        if self.period < 1:
            raise ValueError(f"period must be >= 1, got {self.period}")


@dataclass(frozen=True)
class FoliationModel:
    singularities: Mapping[str, SingularityData] = field(default_factory=dict)
    lambda_hint: Q | None = None

    def __post_init__(self):
        object.__setattr__(self, "singularities", dict(self.singularities))
        if self.lambda_hint is not None:
            hint = as_rational(self.lambda_hint)
            if hint <= 1:
                raise ValueError(f"lambda_hint must exceed 1, got {hint}")
            object.__setattr__(self, "lambda_hint", hint)

    def __hash__(self):
        return hash((tuple(sorted(self.singularities.items())), self.lambda_hint))

    def singularity(self, name: str) -> SingularityData:
        try:
            return self.singularities[name]
        except KeyError:
            raise UnknownSingularity(name) from None


class LambdaLength:
    """Formal nonnegative combination of integer powers of the dilation."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Q | int | str] | None = None):
        clean: dict[int, Q] = {}
        for e, c in (terms or {}).items():
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"exponent must be an integer, got {e!r}")
            c = as_rational(c)
            if c < 0:
                raise ValueError(f"coefficient of lam^{e} is negative: {c}")
            if c:
                clean[e] = clean.get(e, Q(0)) + c
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def unit(cls) -> LambdaLength:
        return cls({0: 1})

    @property
    def terms(self) -> dict[int, Q]:
        return dict(self._terms)

    def __eq__(self, other):
        return isinstance(other, LambdaLength) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __repr__(self):
        body = " + ".join(f"{c}*lam^{e}" for e, c in self._terms.items()) or "0"
        return f"LambdaLength({body})"

    def __add__(self, other: LambdaLength) -> LambdaLength:
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, Q(0)) + c
        return LambdaLength(merged)

    def scale(self, factor: Q) -> LambdaLength:
        return LambdaLength({e: c * factor for e, c in self._terms.items()})

    def shift(self, k: int) -> LambdaLength:
        return LambdaLength({e + k: c for e, c in self._terms.items()})

    def mass(self) -> Q:
        return sum(self._terms.values(), Q(0))

    def max_exponent(self) -> int | None:
        return max(self._terms) if self._terms else None

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, lam: Q | int | str) -> Q:
        lam = as_rational(lam)
        return sum((c * lam**e for e, c in self._terms.items()), Q(0))

    def mass_at_or_above(self, t: int) -> Q:
        return sum((c for e, c in self._terms.items() if e >= t), Q(0))


@dataclass(frozen=True)
class CrossingEvent:
    singularity: str
    side: Side
    split: Q
    u_position: Q

    def __post_init__(self):
        object.__setattr__(self, "side", Side(self.side))
        split = as_rational(self.split)
        if not 0 <= split <= 1:
            raise ValueError(f"split must lie in [0, 1], got {split}")
        object.__setattr__(self, "split", split)
        object.__setattr__(self, "u_position", as_rational(self.u_position))


@dataclass(frozen=True)
class HolonomyResult:
    """Outcome of a generalized holonomy.

    ``length`` is the stable length after the finite part; ``tail_factor``
    is one period of the tail applied to the unit length, when a tail was
    given.
    """

    defined: bool
    length: LambdaLength
    tail_factor: LambdaLength | None = None

    @property
    def blow_up(self) -> bool:
        return not self.defined


def crossing_exponent(s: SingularityData, side: Side | str) -> int:
    side = Side(side)
    k = s.mult * s.period
    return -k if side is Side.SINGULAR_ON_RIGHT else k


def apply_crossing(length: LambdaLength, ev: CrossingEvent, model: FoliationModel) -> LambdaLength:
    """Identity on the part left on the prong, scaling by lam^k on the part beyond it."""
    k = crossing_exponent(model.singularity(ev.singularity), ev.side)
    kept = length.scale(1 - ev.split)
    moved = length.scale(ev.split).shift(k)
    return kept + moved


def _check_increasing(events: Sequence[CrossingEvent]) -> None:
    for i in range(1, len(events)):
        if events[i].u_position <= events[i - 1].u_position:
            raise NonIncreasingUPositions(
                f"u_position {events[i].u_position} at event {i} does not exceed {events[i - 1].u_position}"
            )


def compose(length: LambdaLength, events: Iterable[CrossingEvent], model: FoliationModel) -> LambdaLength:
    for ev in events:
        length = apply_crossing(length, ev, model)
    return length


def generalized_holonomy(
    length: LambdaLength,
    events: Sequence[CrossingEvent],
    periodic_tail: Sequence[CrossingEvent] | None,
    model: FoliationModel,
) -> HolonomyResult:
    """Push a stable length along an unstable segment through crossing events.

    A finite sequence is always defined. With an eventually periodic tail the
    holonomy blows up exactly when one period, applied to the unit length,
    carries positive mass at a positive exponent: iterating then makes the
    top exponent grow without bound.
    """
    events = list(events)
    tail = list(periodic_tail) if periodic_tail else []
    _check_increasing(events + tail)
    out = compose(length, events, model)
    if not tail:
        return HolonomyResult(True, out)
    factor = compose(LambdaLength.unit(), tail, model)
    top = factor.max_exponent()
    defined = top is None or top <= 0
    return HolonomyResult(defined, out, factor)


def positive_side_contraction(
    model: FoliationModel,
    events: Sequence[CrossingEvent],
    length: LambdaLength | None = None,
) -> Verdict:
    """Certify that right-side crossings at positive singularities never lengthen.

    Each crossing moves mass only toward lower exponents, so the output is
    dominated by the input: same total mass and, for every threshold t, no
    more mass at exponents >= t. That dominance gives a smaller value for
    every lam > 1.
    """
    length = length if length is not None else LambdaLength.unit()
    exponents = []
    for i, ev in enumerate(events):
        if ev.side is not Side.SINGULAR_ON_RIGHT:
            raise PreconditionViolated(i, "singularity is not on the right")
        s = model.singularity(ev.singularity)
        if s.mult <= 0:
            raise PreconditionViolated(i, f"singularity {ev.singularity} has mult {s.mult} <= 0")
        exponents.append(crossing_exponent(s, ev.side))
    _check_increasing(events)
    out = compose(length, events, model)

    if any(k > 0 for k in exponents):
        return Verdict.reject("PositiveShift", exponents=exponents, output=out)
    if out.mass() != length.mass():
        return Verdict.reject("MassNotPreserved", exponents=exponents, output=out)
    thresholds = set(length.terms) | set(out.terms)
    for t in sorted(thresholds):
        if out.mass_at_or_above(t) > length.mass_at_or_above(t):
            return Verdict.reject("NotDominated", exponents=exponents, output=out, threshold=t)
    return Verdict.accept(exponents=exponents, output=out)


def validate_event_spacing(
    events: Sequence[CrossingEvent],
    lengths_at_events: Sequence[LambdaLength],
    ell: Q,
    delta: Q,
    model: FoliationModel,
) -> Verdict:
    """Short stable lengths must sit at well separated unstable positions.

    Any two events whose evaluated lengths are both <= ell must have
    u-positions more than delta apart.
    """
    if len(events) != len(lengths_at_events):
        raise LengthMismatch(f"{len(events)} events but {len(lengths_at_events)} lengths")
    if model.lambda_hint is None:
        raise MissingLambdaHint("spacing checks evaluate lengths at lambda_hint")
    ell, delta = as_rational(ell), as_rational(delta)
    short = [
        i for i, ln in enumerate(lengths_at_events) if ln.evaluate(model.lambda_hint) <= ell
    ]
    for a in range(len(short)):
        for b in range(a + 1, len(short)):
            i, j = short[a], short[b]
            gap = abs(events[j].u_position - events[i].u_position)
            if gap <= delta:
                return Verdict.reject("SpacingTooSmall", pair=(i, j), gap=gap)
    return Verdict.accept(checked=len(short))
