"""Scene files: a JSON description of a variety, bundles and the checks to run.

A scene looks like::

    {
      "name": "demo",
      "variety": {"kind": "k3", "h2": 2},
      "bundles": [
        {"name": "O", "construction": "line_bundle"},
        {"name": "TX", "construction": "tangent"},
        {"name": "V", "construction": "tower", "factors": ["TX", "O"],
         "extensions": ["nonsplit"]}
      ],
      "certificates": [{"subject": "O", "status": "declared-stable"}],
      "filtrations": [{"name": "f", "ambient": "V", "steps": ["TX", "V"],
                       "certificates": ["TX", "O"]}],
      "pairings": [],
      "checks": [{"check": "hilbert", "bundle": "TX",
                  "expect": {"hilbert": {"2": "2", "0": "-20"}}}]
    }

Rationals are integers or ``"p/q"`` strings; polynomials are maps from power to
coefficient. Floats are rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bundles import (InvariantViolation, VirtualBundle, dual, direct_sum, from_chern,
                      hyperplane_twist, line_bundle, tangent_bundle, tensor)
from .cohomology import PolarizedVariety
from .pairing import AdmissibleSub, PairingError, PairingStructure, SumObject, Tower
from .scalar_poly import as_rational
from .stability import (Filtration, SemistabilityCertificate, StabilityError, Status,
                        WeightedFiltration)


class SceneError(Exception):
    kind = "scene error"


class SceneParseError(SceneError):
    kind = "parse error"


class UnknownNameError(SceneError):
    kind = "unknown name"


class CyclicReferenceError(SceneError):
    kind = "cyclic reference"


class SceneInvariantError(SceneError):
    kind = "invariant violation"


CHECK_KINDS = ("hilbert", "slopes", "hn", "weighted", "def54", "parabolic", "annihilator")
CONSTRUCTIONS = ("from_chern", "line_bundle", "tangent", "dual", "sum", "tensor", "tower")


@dataclass
class SceneFiltration:
    name: str
    filtration: Filtration
    weights: tuple | None = None
    object_towers: tuple[str, ...] | None = None
    subs: tuple[AdmissibleSub, ...] | None = None

    def weighted(self, weights=None) -> WeightedFiltration:
        ws = weights if weights is not None else self.weights
        if ws is None:
            raise StabilityError(f"filtration {self.name!r} has no weights")
        return WeightedFiltration(self.filtration, ws)


@dataclass
class ScenePairing:
    name: str
    towers: tuple[str, ...]
    obj: SumObject
    structure: PairingStructure


@dataclass
class Scene:
    name: str
    variety: PolarizedVariety
    bundles: dict[str, VirtualBundle] = field(default_factory=dict)
    towers: dict[str, Tower] = field(default_factory=dict)
    certificates: dict[str, SemistabilityCertificate] = field(default_factory=dict)
    filtrations: dict[str, SceneFiltration] = field(default_factory=dict)
    pairings: dict[str, ScenePairing] = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)

    def bundle(self, name: str) -> VirtualBundle:
        try:
            return self.bundles[name]
        except KeyError:
            raise UnknownNameError(f"unknown name: bundle {name!r}") from None

    def tower(self, name: str) -> Tower:
        if name in self.towers:
            return self.towers[name]
        b = self.bundle(name)
        return Tower((b,), (), b.label)

    def sum_object(self, names) -> SumObject:
        return SumObject(tuple(self.tower(n) for n in names))


def _reject_floats(value, where="scene"):
    if isinstance(value, float):
        raise SceneParseError(f"floats are not allowed ({where}: {value!r})")
    if isinstance(value, dict):
        for k, v in value.items():
            _reject_floats(v, f"{where}.{k}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _reject_floats(v, f"{where}[{i}]")


def _require(mapping, key, where):
    if not isinstance(mapping, dict):
        raise SceneParseError(f"{where} must be an object")
    if key not in mapping:
        raise SceneParseError(f"{where}: missing field {key!r}")
    return mapping[key]


def _rational(value, where):
    try:
        return as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SceneParseError(f"{where}: {exc}") from None


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SceneParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _variety(spec) -> PolarizedVariety:
    kind = _require(spec, "kind", "variety")
    try:
        if kind == "k3":
            return PolarizedVariety.k3(_int(spec.get("h2", 2), "variety.h2"))
        if kind == "curve":
            return PolarizedVariety.curve(_int(_require(spec, "genus", "variety"), "variety.genus"),
                                          _int(spec.get("degree", 1), "variety.degree"))
        if kind == "custom-surface":
            kwargs = {}
            if "tangent_c2" in spec:
                kwargs["tangent_c2"] = _rational(spec["tangent_c2"], "variety.tangent_c2")
            if "tangent_ch2" in spec:
                kwargs["tangent_ch2"] = _rational(spec["tangent_ch2"], "variety.tangent_ch2")
            return PolarizedVariety.surface(
                _require(spec, "gram", "variety"), _require(spec, "ample", "variety"),
                [_rational(x, "variety.tangent_c1") for x in _require(spec, "tangent_c1", "variety")],
                name=spec.get("name", "X"), **kwargs)
    except (TypeError, ValueError) as exc:
        raise SceneInvariantError(f"invariant violation: variety: {exc}") from None
    raise SceneParseError(f"variety: unknown kind {kind!r}")


def _references(decl) -> list[str]:
    kind = decl.get("construction")
    if kind == "dual":
        return [decl.get("of")]
    if kind in ("sum", "tensor"):
        return list(decl.get("of", []))
    if kind == "tower":
        return list(decl.get("factors", []))
    return []


def _check_graph(decls):
    """Reject undeclared names, cycles and forward references, in that order."""
    names = [d["name"] for d in decls]
    index = {n: i for i, n in enumerate(names)}
    for d in decls:
        for ref in _references(d):
            if not isinstance(ref, str):
                raise SceneParseError(f"bundle {d['name']!r}: references must be names")
            if ref not in index:
                raise UnknownNameError(f"unknown name: {ref!r} (referenced by {d['name']!r})")
    state: dict[str, int] = {}

    def visit(n, path):
        state[n] = 1
        for ref in _references(decls[index[n]]):
            if state.get(ref) == 1:
                cycle = path[path.index(ref):] + [ref]
                raise CyclicReferenceError("cyclic reference: " + " -> ".join(cycle))
            if ref not in state:
                visit(ref, path + [ref])
        state[n] = 2

    for n in names:
        if n not in state:
            visit(n, [n])
    for d in decls:
        for ref in _references(d):
            if index[ref] >= index[d["name"]]:
                raise SceneInvariantError(
                    f"invariant violation: {d['name']!r} references {ref!r} before it is declared")


def _build_bundle(scene: Scene, decl) -> None:
    name = decl["name"]
    X = scene.variety
    kind = decl.get("construction")
    label = decl.get("label", name)
    where = f"bundle {name!r}"
    genuine = decl.get("genuine", True)
    if kind == "from_chern":
        c1 = decl.get("c1")
        c1 = None if c1 is None else [_rational(x, f"{where}.c1") for x in c1]
        b = from_chern(X, _int(_require(decl, "rank", where), f"{where}.rank"), c1,
                       _rational(decl.get("c2", 0), f"{where}.c2"), label=label, genuine=genuine)
    elif kind == "line_bundle":
        if "multiple" in decl:
            b = hyperplane_twist(X, _rational(decl["multiple"], f"{where}.multiple")).named(label)
        else:
            c1 = decl.get("c1")
            c1 = X.zero_divisor() if c1 is None else [_rational(x, f"{where}.c1") for x in c1]
            b = line_bundle(X, c1, label=label)
    elif kind == "tangent":
        b = tangent_bundle(X).named(label)
    elif kind == "dual":
        b = dual(scene.bundle(decl["of"])).named(label)
    elif kind in ("sum", "tensor"):
        parts = [scene.bundle(n) for n in decl["of"]]
        if not parts:
            raise SceneParseError(f"{where}: {kind} of nothing")
        op = direct_sum if kind == "sum" else tensor
        b = parts[0]
        for p in parts[1:]:
            b = op(b, p)
        b = b.named(label)
    elif kind == "tower":
        factors = tuple(scene.bundle(n) for n in decl["factors"])
        tower = Tower(factors, tuple(decl.get("extensions", ())), label)
        scene.towers[name] = tower
        b = tower.bundle()
    else:
        raise SceneParseError(f"{where}: unknown construction {kind!r}")
    scene.bundles[name] = b


def _certificate(scene: Scene, spec) -> SemistabilityCertificate:
    subject = _require(spec, "subject", "certificate")
    scene.bundle(subject)
    try:
        status = Status(spec.get("status", "declared-semistable"))
    except ValueError:
        raise SceneParseError(f"certificate {subject!r}: bad status {spec.get('status')!r}") from None
    return SemistabilityCertificate(subject, status, spec.get("justification", ""))


def _subs(value, where) -> tuple[AdmissibleSub, ...]:
    if not isinstance(value, list):
        raise SceneParseError(f"{where}: expected a list of prefix vectors")
    out = []
    for s in value:
        if not isinstance(s, list):
            raise SceneParseError(f"{where}: expected a prefix vector, got {s!r}")
        out.append(AdmissibleSub(tuple(_int(x, where) for x in s)))
    return tuple(out)


def _filtration(scene: Scene, spec) -> SceneFiltration:
    name = _require(spec, "name", "filtration")
    where = f"filtration {name!r}"
    object_towers = subs = None
    if "subs" in spec:
        object_towers = tuple(_require(spec, "object", where))
        obj = scene.sum_object(object_towers)
        subs = _subs(spec["subs"], f"{where}.subs")
        for s in subs:
            obj.check(s)
        steps = [obj.bundle(s) for s in subs if any(s.prefix)]
        ambient = obj.total()
    else:
        ambient = scene.bundle(_require(spec, "ambient", where))
        steps = [scene.bundle(n) for n in _require(spec, "steps", where)]
    certs = []
    for n in spec.get("certificates", []):
        if n is None:
            certs.append(None)
            continue
        if n not in scene.certificates:
            raise UnknownNameError(f"unknown name: certificate {n!r} in {where}")
        certs.append(scene.certificates[n])
    f = Filtration(ambient, tuple(steps), tuple(certs))
    for q, cert in zip(f.quotients(), f.certificates):
        if cert is not None and scene.bundle(cert.subject) != q:
            raise SceneInvariantError(
                f"invariant violation: {where}: certificate for {cert.subject!r} does not "
                f"match the quotient's Chern data")
    weights = spec.get("weights")
    if weights is not None:
        weights = tuple(_rational(w, f"{where}.weights") for w in weights)
        WeightedFiltration(f, weights)
    return SceneFiltration(name, f, weights, object_towers, subs)


def _pairing(scene: Scene, spec) -> ScenePairing:
    name = _require(spec, "name", "pairing")
    towers = tuple(_require(spec, "towers", f"pairing {name!r}"))
    obj = scene.sum_object(towers)
    structure = PairingStructure(tuple(_require(spec, "partner", f"pairing {name!r}")),
                                 spec.get("symmetry", "symmetric"))
    structure.validate(obj)
    return ScenePairing(name, towers, obj, structure)


def _unique(items, what):
    seen = set()
    for item in items:
        n = _require(item, "name" if what != "certificate" else "subject", what)
        if not isinstance(n, str) or not n:
            raise SceneParseError(f"{what} names must be nonempty strings")
        if n in seen:
            raise SceneInvariantError(f"invariant violation: duplicate {what} name {n!r}")
        seen.add(n)


def build_scene(data) -> Scene:
    """Validate a parsed scene document and resolve every cross-reference."""
    _reject_floats(data)
    if not isinstance(data, dict):
        raise SceneParseError("scene must be a JSON object")
    scene = Scene(data.get("name", "scene"), _variety(_require(data, "variety", "scene")))
    decls = data.get("bundles", [])
    certs = data.get("certificates", [])
    filts = data.get("filtrations", [])
    pairs = data.get("pairings", [])
    _unique(decls, "bundle")
    _unique(certs, "certificate")
    _unique(filts, "filtration")
    _unique(pairs, "pairing")
    for d in decls:
        if d.get("construction") not in CONSTRUCTIONS:
            raise SceneParseError(
                f"bundle {d['name']!r}: unknown construction {d.get('construction')!r}")
    _check_graph(decls)
    try:
        for d in decls:
            _build_bundle(scene, d)
        for c in certs:
            scene.certificates[c["subject"]] = _certificate(scene, c)
        for p in pairs:
            scene.pairings[p["name"]] = _pairing(scene, p)
        for f in filts:
            scene.filtrations[f["name"]] = _filtration(scene, f)
    except (InvariantViolation, StabilityError, PairingError, ValueError) as exc:
        if isinstance(exc, SceneError):
            raise
        raise SceneInvariantError(f"invariant violation: {exc}") from None
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise SceneParseError("checks must be a list")
    for i, c in enumerate(checks):
        kind = _require(c, "check", f"check #{i + 1}")
        if kind not in CHECK_KINDS:
            raise SceneParseError(f"check #{i + 1}: unknown check {kind!r}")
        for key in ("bundle", "first", "second"):
            if key in c:
                scene.bundle(c[key])
        if "filtration" in c and c["filtration"] not in scene.filtrations:
            raise UnknownNameError(f"unknown name: filtration {c['filtration']!r}")
        if "pairing" in c and c["pairing"] not in scene.pairings:
            raise UnknownNameError(f"unknown name: pairing {c['pairing']!r}")
    scene.checks = list(checks)
    return scene


def parse_scene_text(text: str) -> Scene:
    try:
        data = json.loads(text, parse_float=_float_refused)
    except json.JSONDecodeError as exc:
        raise SceneParseError(
            f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return build_scene(data)


def _float_refused(token):
    raise SceneParseError(f"floats are not allowed: {token}")


def load_scene(path) -> Scene:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SceneParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scene_text(text)
