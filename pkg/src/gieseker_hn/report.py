"""Run the checks of a scene and render the outcome as text, TAP or JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import InvariantViolation, chern_classes, degree, euler_char, hilbert_polynomial
from .cohomology import ForeignClassError
from .pairing import (AdmissibleSub, PairingError, annihilator, filtration_matches_parabolic,
                      is_isotropic, orthogonal_semistability_check)
from .scalar_poly import Ordering, UniPoly, as_rational, eventually_compare, format_rational
from .scene import Scene
from .stability import (Mode, StabilityError, destabilizes, filtration_hilbert, gieseker_slope,
                        mumford_slope, verify_hn_certificate, weighted_filtration_pairing)

# Errors a check may legitimately raise on bad input; anything else is a defect.
CHECK_ERRORS = (StabilityError, PairingError, InvariantViolation, ForeignClassError,
                KeyError, ValueError, TypeError)


class InternalInvariantBreach(RuntimeError):
    pass


@dataclass
class Expectation:
    key: str
    expected: object
    actual: object
    ok: bool


@dataclass
class CheckRecord:
    index: int
    kind: str
    title: str
    inputs: dict
    result: dict = field(default_factory=dict)
    expectations: list[Expectation] = field(default_factory=list)
    error: str | None = None
    declared: bool = False

    @property
    def passed(self) -> bool:
        if self.error is not None:
            return not self.declared
        return all(e.ok for e in self.expectations)


@dataclass
class Report:
    scene: str
    variety: str
    records: list[CheckRecord]

    @property
    def failed(self) -> bool:
        return any(not r.passed for r in self.records)


def to_json(value):
    """Canonical JSON form of a result value."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, UniPoly):
        return value.to_map()
    if isinstance(value, AdmissibleSub):
        return list(value.prefix)
    if isinstance(value, Ordering):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    if isinstance(value, dict):
        return {k: to_json(v) for k, v in value.items()}
    raise InternalInvariantBreach(f"unserializable result {value!r}")


def to_text(value) -> str:
    if isinstance(value, (list, tuple)) and not isinstance(value, AdmissibleSub):
        return "[" + ", ".join(to_text(v) for v in value) + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _coerce_like(actual, expected):
    """Interpret a scene-level expected value with the type of ``actual``."""
    if isinstance(actual, bool):
        if not isinstance(expected, bool):
            raise ValueError(f"expected a boolean, got {expected!r}")
        return expected
    if isinstance(actual, UniPoly):
        if isinstance(expected, dict):
            return UniPoly.from_map(expected)
        return UniPoly.constant(as_rational(expected))
    if isinstance(actual, Ordering):
        return Ordering[str(expected).upper()]
    if isinstance(actual, (Fraction, int)):
        return as_rational(expected)
    if isinstance(actual, AdmissibleSub):
        return AdmissibleSub(tuple(expected))
    if isinstance(actual, (list, tuple)):
        if not isinstance(expected, list) or len(expected) != len(actual):
            raise ValueError(f"expected a list of length {len(actual)}")
        return [_coerce_like(a, e) for a, e in zip(actual, expected)]
    if isinstance(actual, str):
        return str(expected)
    raise InternalInvariantBreach(f"cannot compare against {actual!r}")


def _same(actual, expected) -> bool:
    if isinstance(actual, (list, tuple)) and not isinstance(actual, AdmissibleSub):
        return list(actual) == list(expected)
    return actual == expected


def _sub(value) -> AdmissibleSub:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in value):
        raise ValueError(f"expected a prefix vector, got {value!r}")
    return AdmissibleSub(tuple(value))


def _check_hilbert(scene: Scene, spec) -> dict:
    E = scene.bundle(spec["bundle"])
    c1, c2 = chern_classes(E)
    return {"rank": E.rank, "c1": list(c1), "c2": c2, "degree": degree(E),
            "euler": euler_char(E), "hilbert": hilbert_polynomial(E)}


def _check_slopes(scene: Scene, spec) -> dict:
    F, E = scene.bundle(spec["first"]), scene.bundle(spec["second"])
    pF, pE = gieseker_slope(F), gieseker_slope(E)
    out = {"mumford": [mumford_slope(F), mumford_slope(E)], "gieseker": [pF, pE],
           "comparison": eventually_compare(pF, pE), "difference": pF - pE}
    if 0 < F.rank < E.rank:
        out["destabilizes_gieseker"] = destabilizes(F, E, Mode.GIESEKER)
        out["destabilizes_mt"] = destabilizes(F, E, Mode.MT)
    return out


def _check_hn(scene: Scene, spec) -> dict:
    v = verify_hn_certificate(scene.filtrations[spec["filtration"]].filtration)
    out = {"verdict": "certified" if v.certified else "failed", "slopes": list(v.slopes)}
    if not v.certified:
        out["reason"] = v.reason
    return out


def _check_weighted(scene: Scene, spec) -> dict:
    sf = scene.filtrations[spec["filtration"]]
    weights = spec.get("weights")
    if weights is not None:
        weights = [as_rational(w) for w in weights]
    wf = sf.weighted(weights)
    value = weighted_filtration_pairing(wf)
    return {"weights": list(wf.weights), "pairing": value,
            "filtration_hilbert": filtration_hilbert(sf.filtration),
            "semistable_along": eventually_compare(value, UniPoly()) is not Ordering.GREATER}


def _check_annihilator(scene: Scene, spec) -> dict:
    p = scene.pairings[spec["pairing"]]
    S = p.obj.check(_sub(spec["sub"]))
    perp = annihilator(S, p.structure, p.obj)
    return {"symmetry": p.structure.symmetry.value, "sub_name": p.obj.describe(S),
            "annihilator": perp, "annihilator_name": p.obj.describe(perp),
            "isotropic": is_isotropic(S, p.structure, p.obj)}


def _check_def54(scene: Scene, spec) -> dict:
    p = scene.pairings[spec["pairing"]]
    subs = [p.obj.check(_sub(s)) for s in spec["subs"]]
    verdicts = orthogonal_semistability_check(subs, p.structure, p.obj)
    return {"annihilators": [v.annihilator for v in verdicts],
            "differences": [v.difference for v in verdicts],
            "holds": [v.holds for v in verdicts]}


def _check_parabolic(scene: Scene, spec) -> dict:
    p = scene.pairings[spec["pairing"]]
    sf = scene.filtrations[spec["filtration"]]
    if sf.subs is None:
        raise ValueError(f"filtration {sf.name!r} is not given by admissible subs")
    if tuple(sf.object_towers) != tuple(p.towers):
        raise ValueError(f"filtration {sf.name!r} and pairing {p.name!r} use different towers")
    v = filtration_matches_parabolic(sf.subs, p.structure, p.obj)
    out = {"symmetry": p.structure.symmetry.value,
           "verdict": "compatible" if v.compatible else "incompatible"}
    if not v.compatible:
        out.update({"witness": v.witness, "witness_name": p.obj.describe(v.witness),
                    "annihilator": v.witness_annihilator,
                    "annihilator_name": p.obj.describe(v.witness_annihilator),
                    "annihilator_is_step": v.annihilator_is_step})
    return out


RUNNERS = {
    "hilbert": _check_hilbert,
    "slopes": _check_slopes,
    "hn": _check_hn,
    "weighted": _check_weighted,
    "annihilator": _check_annihilator,
    "def54": _check_def54,
    "parabolic": _check_parabolic,
}

_INPUT_KEYS = ("bundle", "first", "second", "filtration", "pairing", "sub", "subs", "weights")


def _title(spec) -> str:
    if "name" in spec:
        return spec["name"]
    args = [to_text(spec[k]) for k in _INPUT_KEYS if k in spec]
    return " ".join([spec["check"], *args])


def run_check(scene: Scene, index: int, spec) -> CheckRecord:
    kind = spec["check"]
    rec = CheckRecord(index, kind, _title(spec),
                      {k: spec[k] for k in _INPUT_KEYS if k in spec})
    expect = spec.get("expect") or {}
    rec.declared = bool(expect)
    try:
        rec.result = RUNNERS[kind](scene, spec)
    except CHECK_ERRORS as exc:
        rec.error = f"{type(exc).__name__}: {exc}"
        return rec
    for key, raw in expect.items():
        if key not in rec.result:
            rec.expectations.append(Expectation(key, raw, None, False))
            continue
        actual = rec.result[key]
        try:
            expected = _coerce_like(actual, raw)
        except (ValueError, TypeError, KeyError, ZeroDivisionError):
            rec.expectations.append(Expectation(key, raw, actual, False))
            continue
        rec.expectations.append(Expectation(key, expected, actual, _same(actual, expected)))
    return rec


def run_checks(scene: Scene) -> Report:
    records = [run_check(scene, i + 1, spec) for i, spec in enumerate(scene.checks)]
    return Report(scene.name, scene.variety.name, records)


def render_text(report: Report) -> str:
    lines = [f"scene: {report.scene}", f"variety: {report.variety}", ""]
    for r in report.records:
        status = "ERROR" if r.error else ("PASS" if r.passed else "FAIL")
        if not r.expectations and not r.error:
            status = "DONE"
        lines.append(f"[{r.index}] {r.title}: {status}")
        if r.error:
            lines.append(f"    error: {r.error}")
        for key, value in r.result.items():
            lines.append(f"    {key} = {to_text(value)}")
        for e in r.expectations:
            if not e.ok:
                lines.append(f"    expected {e.key} = {to_text(e.expected)}, "
                             f"got {to_text(e.actual)}")
    failures = sum(not r.passed for r in report.records)
    lines.append("")
    lines.append(f"{len(report.records)} checks, {failures} failed")
    return "\n".join(lines) + "\n"


def _yaml_scalar(value) -> str:
    return json.dumps(to_json(value), ensure_ascii=False)


def render_tap(report: Report) -> str:
    """TAP version 13, one test point per check that declares an expectation."""
    points = [r for r in report.records if r.expectations or (r.error and r.declared)]
    lines = ["TAP version 13", f"1..{len(points)}"]
    for n, r in enumerate(points, 1):
        lines.append(f"{'ok' if r.passed else 'not ok'} {n} - {r.title}")
        if not r.passed:
            lines.append("  ---")
            if r.error:
                lines.append(f"  message: {json.dumps(r.error, ensure_ascii=False)}")
            for e in r.expectations:
                if not e.ok:
                    lines.append(f"  {e.key}:")
                    lines.append(f"    expected: {_yaml_scalar(e.expected)}")
                    lines.append(f"    got: {_yaml_scalar(e.actual)}")
            lines.append("  ...")
    return "\n".join(lines) + "\n"


def report_dict(report: Report) -> dict:
    return {
        "scene": report.scene,
        "variety": report.variety,
        "passed": not report.failed,
        "checks": [
            {"index": r.index, "check": r.kind, "title": r.title, "inputs": r.inputs,
             "result": to_json(r.result), "error": r.error,
             "expectations": [{"key": e.key, "expected": to_json(e.expected),
                               "actual": to_json(e.actual), "ok": e.ok}
                              for e in r.expectations],
             "passed": r.passed}
            for r in report.records
        ],
    }


def render_json(report: Report) -> str:
    return json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n"


RENDERERS = {"report": render_text, "tap": render_tap, "json": render_json}
