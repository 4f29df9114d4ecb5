"""The built-in K3 scene: an orthogonal bundle whose Gieseker HN filtration
is not a parabolic reduction.

On a K3 surface ``X`` with polarization ``H^2 = d``, let ``V`` be a nonsplit
extension ``0 -> TX -> V -> O_X -> 0``. The HN filtration of ``E = V ⊕ V∨`` is
``0 ⊂ O_X ⊂ V ⊕ O_X ⊂ E``, and the annihilator of ``O_X`` under the hyperbolic
pairing on ``E`` is ``TX ⊕ V∨``, which is not a step of that filtration.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar_poly import UniPoly


def _poly(*pairs) -> dict[str, str]:
    return UniPoly.from_map({str(k): v for k, v in pairs}).to_map()


def k3_scene(h2: int = 2) -> dict:
    """Scene document for the K3 example with ``H^2 = h2``."""
    half = Fraction(h2, 2)
    reduced = lambda c: _poly((2, half), (0, c))  # noqa: E731
    towers = ["V", "V_dual"]
    hn_subs = [[0, 1], [2, 1], [2, 2]]
    stable_tx = "Mumford-Takemoto stable: Kähler-Einstein metric and indecomposability"
    checks = [
        {"check": "hilbert", "bundle": "O",
         "expect": {"c2": "0", "euler": "2", "hilbert": reduced(2)}},
        {"check": "hilbert", "bundle": "TX",
         "expect": {"c1": ["0"], "c2": "24", "euler": "-20", "degree": "0",
                    "hilbert": _poly((2, h2), (0, -20))}},
        {"check": "hilbert", "bundle": "V",
         "expect": {"euler": "-18", "hilbert": _poly((2, 3 * half), (0, -18))}},
        {"name": "O versus TX", "check": "slopes", "first": "O", "second": "TX",
         "expect": {"comparison": "Greater", "difference": _poly((0, 12))}},
        {"name": "O inside V_dual", "check": "slopes", "first": "O", "second": "V_dual",
         "expect": {"destabilizes_gieseker": True, "destabilizes_mt": False}},
        {"name": "TX inside V", "check": "slopes", "first": "TX", "second": "V",
         "expect": {"destabilizes_gieseker": False, "destabilizes_mt": False}},
        {"check": "hn", "filtration": "hn",
         "expect": {"verdict": "certified",
                    "slopes": [reduced(2), reduced(-6), reduced(-10)]}},
        {"check": "weighted", "filtration": "hn",
         "expect": {"pairing": _poly((0, 96)), "filtration_hilbert": _poly((0, 96)),
                    "semistable_along": False}},
        {"check": "annihilator", "pairing": "orthogonal", "sub": [0, 1],
         "expect": {"annihilator": [1, 2], "annihilator_name": "TX⊕V∨", "isotropic": True}},
        {"check": "annihilator", "pairing": "symplectic", "sub": [0, 1],
         "expect": {"annihilator": [1, 2], "annihilator_name": "TX⊕V∨", "isotropic": True}},
        {"check": "def54", "pairing": "orthogonal", "subs": [[0, 1], [1, 0], [0, 0]],
         "expect": {"differences": [{}, {}, {}], "holds": [True, True, True]}},
        {"check": "parabolic", "pairing": "orthogonal", "filtration": "hn",
         "expect": {"verdict": "incompatible", "witness": [0, 1], "annihilator": [1, 2]}},
        {"check": "parabolic", "pairing": "symplectic", "filtration": "hn",
         "expect": {"verdict": "incompatible", "witness": [0, 1], "annihilator": [1, 2]}},
    ]
    return {
        "name": "paper-k3",
        "variety": {"kind": "k3", "h2": h2},
        "bundles": [
            {"name": "O", "label": "O_X", "construction": "line_bundle"},
            {"name": "TX", "construction": "tangent"},
            {"name": "V", "construction": "tower", "factors": ["TX", "O"],
             "extensions": ["nonsplit"]},
            {"name": "V_dual", "label": "V∨", "construction": "tower", "factors": ["O", "TX"],
             "extensions": ["nonsplit"]},
            {"name": "V+O", "label": "V⊕O_X", "construction": "sum", "of": ["V", "O"]},
            {"name": "E", "label": "V⊕V∨", "construction": "sum", "of": ["V", "V_dual"]},
        ],
        "certificates": [
            {"subject": "O", "status": "declared-stable", "justification": "line bundle"},
            {"subject": "TX", "status": "declared-stable", "justification": stable_tx},
            {"subject": "V", "status": "declared-semistable",
             "justification": "Gieseker semistable nonsplit extension of O_X by TX"},
        ],
        "pairings": [
            {"name": "orthogonal", "towers": towers, "partner": [1, 0],
             "symmetry": "symmetric"},
            {"name": "symplectic", "towers": towers, "partner": [1, 0],
             "symmetry": "antisymmetric"},
        ],
        "filtrations": [
            {"name": "hn", "object": towers, "subs": hn_subs,
             "certificates": ["O", "V", "TX"], "weights": [-1, 0, 1]},
        ],
        "checks": checks,
    }
