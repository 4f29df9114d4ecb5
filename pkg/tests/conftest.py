from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from gieseker_hn.bundles import VirtualBundle, dual, structure_sheaf, tangent_bundle
from gieseker_hn.cohomology import PolarizedVariety
from gieseker_hn.pairing import AdmissibleSub, PairingStructure, SumObject, Symmetry, Tower
from gieseker_hn.scalar_poly import UniPoly

# ---------------------------------------------------------------- acceptance summary

_ACCEPTANCE: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    label = report.user_properties and dict(report.user_properties).get("acceptance")
    if label:
        _ACCEPTANCE.setdefault(label, []).append(report.outcome)


@pytest.fixture(autouse=True)
def _acceptance_label(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker:
        request.node.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: (int(s.split()[0][2:]), s)):
        outcomes = _ACCEPTANCE[label]
        ok = all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")


# ---------------------------------------------------------------- fixtures


class K3Data:
    """The K3 objects used throughout: O, TX, V, V∨ and the sum object V ⊕ V∨."""

    def __init__(self, d: int):
        self.d = d
        self.X = PolarizedVariety.k3(d)
        self.O = structure_sheaf(self.X).named("O_X")
        self.TX = tangent_bundle(self.X)
        self.V_tower = Tower((self.TX, self.O), ("nonsplit",), "V")
        self.Vd_tower = Tower((self.O, self.TX), ("nonsplit",), "V∨")
        self.V = self.V_tower.bundle()
        self.Vd = self.Vd_tower.bundle()
        self.obj = SumObject((self.V_tower, self.Vd_tower))
        self.E = self.obj.total()
        self.orthogonal = PairingStructure((1, 0), Symmetry.SYMMETRIC).validate(self.obj)
        self.symplectic = PairingStructure((1, 0), Symmetry.ANTISYMMETRIC).validate(self.obj)
        self.hn_subs = [AdmissibleSub((0, 1)), AdmissibleSub((2, 1)), AdmissibleSub((2, 2))]


@pytest.fixture(params=[2, 4, 10], ids=lambda d: f"d={d}")
def k3(request) -> K3Data:
    return K3Data(request.param)


@pytest.fixture
def k3_default() -> K3Data:
    return K3Data(2)


# ---------------------------------------------------------------- strategies

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polys(draw, max_degree=4):
    return UniPoly(draw(st.lists(st.integers(-5, 5), max_size=max_degree + 1)))


@st.composite
def rational_polys(draw, max_degree=3):
    return UniPoly(draw(st.lists(rationals, max_size=max_degree + 1)))


@st.composite
def surfaces(draw):
    rho = draw(st.integers(1, 3))
    gram = [[0] * rho for _ in range(rho)]
    for i in range(rho):
        for j in range(i, rho):
            gram[i][j] = gram[j][i] = draw(st.integers(-3, 3))
    ample = [draw(st.integers(-2, 3)) for _ in range(rho)]
    h2 = sum(ample[i] * gram[i][j] * ample[j] for i in range(rho) for j in range(rho))
    assume(h2 > 0)
    c1 = [draw(small_ints) for _ in range(rho)]
    return PolarizedVariety.surface(gram, ample, c1, tangent_ch2=draw(rationals))


k3_surfaces = st.sampled_from([2, 4, 6, 8, 22]).map(PolarizedVariety.k3)


@st.composite
def bundles_on(draw, X, min_rank=-2, max_rank=5):
    rank = draw(st.integers(min_rank, max_rank))
    ch1 = [draw(rationals) for _ in range(X.ns_rank)]
    ch2 = draw(rationals) if X.dimension == 2 else 0
    return VirtualBundle(X, rank, ch1, ch2, genuine=False)


@st.composite
def surface_with_bundles(draw, n=3, surface_strategy=None):
    X = draw(surface_strategy if surface_strategy is not None else surfaces())
    return X, [draw(bundles_on(X)) for _ in range(n)]


@st.composite
def curves_with_bundle(draw):
    X = PolarizedVariety.curve(draw(st.integers(0, 6)), draw(st.integers(1, 5)))
    return X, draw(bundles_on(X))


@st.composite
def paired_objects(draw, X, degree_zero=False):
    """A SumObject made of tower pairs (T, T∨ reversed) with a hyperbolic pairing."""
    n_pairs = draw(st.integers(1, 2))
    towers = []
    for p in range(n_pairs):
        k = draw(st.integers(1, 3))
        factors = []
        for j in range(k):
            rank = draw(st.integers(1, 3))
            ch1 = X.zero_divisor() if degree_zero else [draw(small_ints) for _ in range(X.ns_rank)]
            factors.append(VirtualBundle(X, rank, ch1, draw(rationals), label=f"A{p}{j}"))
        flags = [draw(st.sampled_from(["split", "nonsplit"])) for _ in range(k - 1)]
        towers.append(Tower(tuple(factors), tuple(flags), f"T{p}"))
        towers.append(Tower(tuple(dual(f) for f in reversed(factors)), tuple(reversed(flags)),
                            f"T{p}∨"))
    partner = []
    for t in range(len(towers)):
        partner.append(t + 1 if t % 2 == 0 else t - 1)
    symmetry = draw(st.sampled_from(list(Symmetry)))
    obj = SumObject(tuple(towers))
    return obj, PairingStructure(tuple(partner), symmetry).validate(obj)


def frac(x) -> Fraction:
    return Fraction(x)
