"""``aoc`` command line front end.

Each subcommand reads its input from flags or from a scenario file
(``-f scenario.json``), prints a JSON report on stdout and a one-line
summary on stderr. Exit codes: 0 success, 1 violation or incompatibility,
2 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Any, Callable

from pydantic import ValidationError

from aoc import codec
from aoc import drift_cover as dc
from aoc import measured_holonomy as mh
from aoc import sections as sec
from aoc import strip_plane as sp
from aoc import torus_homology as th
from aoc.rational import Q, ParseError
from aoc.verdict import AocError, Verdict


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Outcome:
    def __init__(self, status: str, result: dict[str, Any], summary: str):
        self.status = status
        self.result = result
        self.summary = summary


def _ok(summary: str, **result) -> Outcome:
    return Outcome("ok", result, summary)


def _violation(rule: str, message: str, **result) -> Outcome:
    return Outcome("violation", {"violation": {"rule": rule, "message": message}, **result}, message)


def _from_verdict(v: Verdict, summary: str) -> Outcome:
    details = codec.jsonable(v.details)
    if v:
        return _ok(summary, accepted=True, **details)
    return Outcome(
        "violation",
        {"accepted": False, "violation": {"rule": v.violation, "message": v.violation}, **details},
        f"rejected: {v.violation}",
    )


# handlers: payload model -> Outcome

def _surgery(p: codec.SurgeryPayload, action) -> Outcome:
    inv = th.BoundaryInvariant(p.mult, p.link, p.period)
    out = th.surgery_invariant(inv, p.k)
    return _ok(f"surgery k={p.k}: ({p.mult}, {p.link}) -> ({out.mult}, {out.link})",
               mult=out.mult, link=out.link, period=out.period)


_MODELS = {
    "trivial": sp.TRIVIAL,
    "positive": sp.POSITIVE_STRIP,
    "negative": sp.NEGATIVE_STRIP,
}


def _strip(p, action) -> Outcome:
    model = _MODELS[p.model]
    if action == "classify":
        nature = sp.classify_model(model)
        census = sorted(t.value for t in sp.lozenge_census(model))
        return _ok(f"{p.model} model: {nature.value}", nature=nature.value, lozenge_types=census)
    pt = codec.point(p.point)
    if action == "lozenge":
        loz = sp.lozenge_at(model, pt, sp.LozengeType(p.type), p.corner)
        enc = codec.encode_lozenge(loz) if loz else None
        return _ok("lozenge found" if loz else "no lozenge of that type", lozenge=enc)
    res = sp.quadrant_complete(model, pt, p.quadrant)
    witness = [codec.encode_point(w) for w in res.witness] if res.witness else None
    return _ok(f"quadrant {p.quadrant} {'complete' if res else 'incomplete'}",
               complete=res.complete, witness=witness)


def _drift(p, action) -> Outcome:
    if action == "rectangle":
        value = dc.rectangle_boundary_drift(p.n1, p.n2)
        result: dict[str, Any] = {"drift": value}
        if (p.lozenge is None) != (p.eta is None):
            raise dc.WrongModel("rectangle needs both 'lozenge' and 'eta' or neither")
        if p.lozenge is not None:
            rect = dc.su_rectangle_from_lozenge(sp.POSITIVE_STRIP, codec.lozenge(p.lozenge), codec.point(p.eta))
            result["rectangle"] = codec.encode_rectangle(rect)
        return _ok(f"su-rectangle boundary drift {value}", **result)
    curve, cover = codec.cover(p)
    if action == "eval":
        windings = [dc.winding_number(curve, pu.position) for pu in cover.punctures]
        value = dc.drift(curve, cover)
        return _ok(f"drift {value}", drift=value, windings=windings)
    if action == "check-local":
        return _from_verdict(dc.local_drift_sum_check(curve, cover), "local drift sum matches")
    w = dc.witness_positive_boundary(curve, cover)
    value = dc.drift(curve, cover)
    enc = codec.encode_puncture(w) if w else None
    return _ok("positive boundary witness found" if w else "no witness (drift >= 0)",
               drift=value, witness=enc)


def _holonomy(p, action) -> Outcome:
    if action == "exponent":
        k = mh.crossing_exponent(mh.SingularityData(p.mult, p.link, p.period), p.side)
        return _ok(f"crossing exponent {k}", exponent=k)
    model = codec.foliation(p.foliation)
    length = codec.length(p.length)
    events = [codec.event(e) for e in p.events]
    if action == "compose":
        tail = [codec.event(e) for e in p.tail] if p.tail is not None else None
        res = mh.generalized_holonomy(length, events, tail, model)
        result: dict[str, Any] = {
            "defined": res.defined,
            "length": codec.encode_length(res.length),
            "tail_factor": codec.encode_length(res.tail_factor) if res.tail_factor is not None else None,
        }
        if model.lambda_hint is not None:
            result["value_at_hint"] = codec.jsonable(res.length.evaluate(model.lambda_hint))
        return _ok("holonomy defined" if res.defined else "holonomy blows up", **result)
    return _from_verdict(mh.positive_side_contraction(model, events, length), "contraction certified")


def _sections(p, action) -> Outcome:
    if action == "validate":
        s = codec.section(p.section)
        sign = sec.section_sign(s)
        wd = sec.mult_well_defined(s)
        if not wd:
            return _from_verdict(wd, "")
        return _ok(f"section {s.name} is valid and {sign.value}", valid=True, sign=sign.value)
    if action == "link-eq":
        return _from_verdict(sec.linking_equation_check(codec.intersection(p.data)), "linking equation holds")
    if action == "exclude":
        s1, s2 = codec.section(p.s1), codec.section(p.s2)
        out = sec.exclusion_verdict(s1, s2, codec.intersection(p.data))
        if isinstance(out, sec.Incompatible):
            return Outcome("incompatible", {"verdict": "incompatible", "reasons": list(out.reasons)},
                           f"incompatible: {out.final_reason}")
        return _ok(f"no verdict: {out.reason}", verdict="no-verdict", reason=out.reason)
    if action == "classify":
        specs = [codec.section(d) for d in p.evidence]
        try:
            nature = sec.classify_nature(specs)
        except sec.MutuallyExclusiveError as e:
            return _violation("MutuallyExclusive", str(e), pair=list(e.pair))
        return _ok(f"flow nature: {nature.value}", nature=nature.value)
    s = codec.section(p.section)
    coeffs = sec.positivize_pipeline(s)
    after = sec.apply_surgeries(s, coeffs)
    return _ok(
        "surgery coefficients " + ", ".join(f"{o}:{k}" for o, k in coeffs),
        coefficients=[{"orbit": o, "k": k} for o, k in coeffs],
        section=codec.encode_section(after),
        sign=sec.section_sign(after).value,
    )


HANDLERS: dict[str, Callable] = {
    "surgery": _surgery,
    "strip": _strip,
    "drift": _drift,
    "holonomy": _holonomy,
    "sections": _sections,
}


def selfcheck(trials: int, seed: int) -> Outcome:
    """Randomized spot checks of the core identities."""
    rng = random.Random(seed)
    failures: list[str] = []
    counts = dict.fromkeys(("surgery_inverse", "positivize", "drift_reverse", "crossing_eval"), 0)
    for _ in range(trials):
        c = th.TorusHomologyClass(rng.randint(-100, 100), rng.randint(-100, 100))
        k = rng.randint(-100, 100)
        if th.surgery_transform(th.surgery_transform(c, k), -k) != c:
            failures.append(f"surgery inverse {c} k={k}")
        counts["surgery_inverse"] += 1

        inv = th.BoundaryInvariant(rng.choice([m for m in range(-9, 10) if m]), rng.randint(-9, -1))
        k = th.positivizing_coefficient(inv)
        if th.surgery_invariant(inv, k).mult <= 0:
            failures.append(f"positivize {inv}")
        counts["positivize"] += 1

        x0, y0 = Q(rng.randint(-5, 5)), Q(rng.randint(-5, 5))
        w, h = Q(rng.randint(1, 5)), Q(rng.randint(1, 5))
        curve = dc.PolyCurve.of([(x0, y0), (x0 + w, y0), (x0 + w, y0 + h), (x0, y0 + h)])
        pts = {(Q(rng.randint(-20, 20), 2), Q(rng.randint(-20, 20), 2)) for _ in range(4)}
        punct = tuple(dc.Puncture(sp.PlanePoint(*q), rng.choice([-3, -2, -1, 1, 2, 3]))
                      for q in pts if not dc.on_curve(curve, sp.PlanePoint(*q)))
        cover = dc.PuncturedCover(punct)
        if dc.drift(curve.reversed(), cover) != -dc.drift(curve, cover):
            failures.append("drift reversal")
        counts["drift_reverse"] += 1

        model = mh.FoliationModel({"s": mh.SingularityData(rng.choice([-3, -2, -1, 1, 2, 3]), -1,
                                                             rng.randint(1, 3))})
        ev = mh.CrossingEvent("s", rng.choice(list(mh.Side)), Q(rng.randint(0, 8), 8), 0)
        length = mh.LambdaLength({rng.randint(-3, 3): Q(rng.randint(1, 9), rng.randint(1, 9))})
        lam = Q(3, 2)
        kexp = mh.crossing_exponent(model.singularities["s"], ev.side)
        expect = (1 - ev.split) * length.evaluate(lam) + ev.split * lam**kexp * length.evaluate(lam)
        if mh.apply_crossing(length, ev, model).evaluate(lam) != expect:
            failures.append("crossing evaluation")
        counts["crossing_eval"] += 1
    if failures:
        return _violation("SelfcheckFailed", failures[0], seed=seed, trials=trials, failures=failures[:20])
    return _ok(f"selfcheck passed ({trials} trials, seed {seed})", seed=seed, trials=trials, checks=counts)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aoc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, actions=None, **kw):
        p = sub.add_parser(name, **kw)
        if actions:
            p.add_argument("action", choices=actions)
        p.add_argument("-f", "--file", help="scenario JSON file ('-' for stdin)")
        return p

    p = add("surgery", help="Fried-Goodman surgery on (mult, link)")
    p.add_argument("--mult", type=int)
    p.add_argument("--link", type=int)
    p.add_argument("--period", type=int)
    p.add_argument("--k", type=int)

    p = add("strip", ["classify", "lozenge", "complete"], help="model bifoliated planes")
    p.add_argument("--model", choices=sorted(_MODELS))
    p.add_argument("--point", help="x,y as rationals, e.g. 1/2,0")
    p.add_argument("--type", choices=["++", "+-"])
    p.add_argument("--corner", type=int, choices=[1, 2])
    p.add_argument("--quadrant", choices=["++", "+-", "-+", "--"])

    p = add("drift", ["eval", "check-local", "witness", "rectangle"], help="drift on punctured planes")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)

    p = add("holonomy", ["exponent", "compose", "contract"], help="crossing-holonomy calculus")
    p.add_argument("--mult", type=int)
    p.add_argument("--link", type=int)
    p.add_argument("--period", type=int)
    p.add_argument("--side", choices=["right", "left"])

    add("sections", ["validate", "link-eq", "exclude", "classify", "positivize"],
        help="partial/Birkhoff section invariants")

    p = sub.add_parser("selfcheck", help="randomized property checks (seed from AOC_SEED)")
    p.add_argument("--trials", type=int, default=200)
    return parser


_FLAG_FIELDS = ("mult", "link", "period", "k", "model", "type", "corner", "quadrant", "n1", "n2", "side")


def _payload_from_flags(args) -> dict:
    payload = {}
    for name in _FLAG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            payload[name] = value
    point = getattr(args, "point", None)
    if point is not None:
        parts = point.split(",")
        if len(parts) != 2:
            raise UsageError(f"--point expects 'x,y', got {point!r}")
        payload["point"] = {"x": parts[0].strip(), "y": parts[1].strip()}
    return payload


def _load_scenario(path: str, command: str) -> dict:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    scenario = codec.Scenario.model_validate(json.loads(text))
    if scenario.command != command:
        raise UsageError(f"scenario is for {scenario.command!r}, not {command!r}")
    return scenario.payload


def execute(argv: list[str]) -> tuple[int, dict, str]:
    """Run one invocation; returns (exit code, report, human summary)."""
    command = action = None
    try:
        args = build_parser().parse_args(argv)
        command, action = args.command, getattr(args, "action", None)
        if command == "selfcheck":
            seed = int(os.environ.get("AOC_SEED", "0"))
            outcome = selfcheck(args.trials, seed)
        else:
            raw = _load_scenario(args.file, command) if args.file else _payload_from_flags(args)
            payload = codec.parse_payload(command, action, raw)
            try:
                outcome = HANDLERS[command](payload, action)
            except (AocError, ValueError, KeyError) as e:
                outcome = _violation(type(e).__name__, str(e))
    except (UsageError, ValidationError, ParseError, json.JSONDecodeError, OSError) as e:
        report = {"schema": codec.SCHEMA_VERSION, "command": command, "action": action,
                  "status": "error", "error": {"type": type(e).__name__, "message": str(e)}}
        return 2, report, f"error: {e}"

    report = {"schema": codec.SCHEMA_VERSION, "command": command, "action": action,
              "status": outcome.status, **outcome.result}
    code = 0 if outcome.status == "ok" else 1
    return code, report, outcome.summary


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    code, report, summary = execute(list(sys.argv[1:] if argv is None else argv))
    stdout.write(json.dumps(report, sort_keys=True) + "\n")
    stderr.write(summary + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
