from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gieseker_hn.bundles import VirtualBundle, direct_sum, hilbert_polynomial, hyperplane_twist
from gieseker_hn.scalar_poly import Ordering, UniPoly, eventually_compare
from gieseker_hn.stability import (Filtration, Mode, SemistabilityCertificate, StabilityError,
                                   Status, WeightedFiltration, destabilizes, filtration_hilbert,
                                   gieseker_slope, mumford_slope, verify_hn_certificate,
                                   weighted_filtration_pairing)

from conftest import K3Data, bundles_on, surfaces

m = UniPoly.m()
SS = SemistabilityCertificate


def hn_filtration(k: K3Data) -> Filtration:
    steps = [k.obj.bundle(s) for s in k.hn_subs]
    return Filtration(k.E, steps, [SS("O_X", Status.STABLE), SS("V"), SS("TX", Status.STABLE)])


def test_mumford_slopes(k3):
    assert mumford_slope(k3.TX) == 0
    assert mumford_slope(k3.O) == 0
    assert mumford_slope(hyperplane_twist(k3.X, 3)) == 3 * k3.d


def test_slope_needs_positive_rank(k3):
    zero = VirtualBundle(k3.X, 0, [0], 0, genuine=False)
    with pytest.raises(StabilityError):
        mumford_slope(zero)
    with pytest.raises(StabilityError):
        gieseker_slope(zero)


def test_gieseker_slopes(k3):
    half = Fraction(k3.d, 2)
    assert gieseker_slope(k3.O) == half * m * m + 2
    assert gieseker_slope(k3.TX) == half * m * m - 10
    assert gieseker_slope(k3.V) == half * m * m - 6


def test_destabilizes(k3):
    assert destabilizes(k3.O, k3.Vd, Mode.GIESEKER)
    assert not destabilizes(k3.O, k3.Vd, Mode.MT)
    assert not destabilizes(k3.TX, k3.V, Mode.GIESEKER)
    with pytest.raises(StabilityError):
        destabilizes(k3.V, k3.TX)
    with pytest.raises(StabilityError):
        destabilizes(k3.V, k3.V)


def test_hn_certificate_for_v_plus_vdual(k3):
    verdict = verify_hn_certificate(hn_filtration(k3))
    half = Fraction(k3.d, 2)
    assert verdict.certified
    assert verdict.slopes == (half * m * m + 2, half * m * m - 6, half * m * m - 10)


def test_hn_wrong_order_fails(k3):
    f = Filtration(k3.V, [k3.TX, k3.V], [SS("TX"), SS("O_X")])
    verdict = verify_hn_certificate(f)
    assert not verdict.certified
    assert verdict.reason == "slopes not strictly decreasing"


def test_hn_needs_certificates(k3):
    f = Filtration(k3.E, [k3.obj.bundle(s) for s in k3.hn_subs], [SS("O_X"), None, SS("TX")])
    assert verify_hn_certificate(f).reason == "uncertified quotient"
    f = Filtration(k3.E, [k3.obj.bundle(s) for s in k3.hn_subs],
                   [SS("O_X"), SS("V", Status.UNKNOWN), SS("TX")])
    assert verify_hn_certificate(f).reason == "uncertified quotient"


def test_single_step_semistable(k3):
    assert verify_hn_certificate(Filtration(k3.V, [k3.V], [SS("V")])).certified


def test_filtration_invariants(k3):
    with pytest.raises(StabilityError):
        Filtration(k3.V, [k3.V, k3.V])
    with pytest.raises(StabilityError):
        Filtration(k3.V, [k3.TX])
    with pytest.raises(StabilityError):
        Filtration(k3.E, [k3.V, k3.Vd])  # last step has the right rank but is not E


def test_weighted_pairing_hn_value(k3):
    wf = WeightedFiltration(hn_filtration(k3), [-1, 0, 1])
    assert weighted_filtration_pairing(wf) == 96
    assert filtration_hilbert(hn_filtration(k3)) == 96


def test_weighted_pairing_tx_in_v(k3):
    f = Filtration(k3.V, [k3.TX, k3.V])
    assert weighted_filtration_pairing(WeightedFiltration(f, [0, 1])) == -24


def test_weighted_pairing_trivial_filtration(k3):
    f = Filtration(k3.E, [k3.E])
    assert weighted_filtration_pairing(WeightedFiltration(f, [7])) == 0
    assert filtration_hilbert(f) == 0


def test_filtration_hilbert_of_two_step(k3):
    f = Filtration(k3.E, [k3.O, k3.E])
    assert filtration_hilbert(f) == 48


def test_weights_must_increase(k3):
    f = Filtration(k3.V, [k3.TX, k3.V])
    with pytest.raises(StabilityError):
        WeightedFiltration(f, [1, 1])
    with pytest.raises(StabilityError):
        WeightedFiltration(f, [1])


@st.composite
def random_filtrations(draw):
    X = draw(surfaces())
    pieces = [draw(bundles_on(X, min_rank=1, max_rank=3)) for _ in range(draw(st.integers(1, 4)))]
    steps = []
    acc = None
    for p in pieces:
        acc = p if acc is None else direct_sum(acc, p)
        steps.append(acc)
    return Filtration(steps[-1], steps)


@given(random_filtrations())
def test_unit_gap_weights_give_filtration_hilbert(f):
    wf = WeightedFiltration(f, list(range(1, f.length + 1)))
    assert weighted_filtration_pairing(wf) == filtration_hilbert(f)


@given(random_filtrations(), st.fractions(min_value=Fraction(1, 7), max_value=9))
def test_weight_scaling(f, c):
    base = [Fraction(i * i, 2) - 3 for i in range(f.length)]
    p = weighted_filtration_pairing(WeightedFiltration(f, base))
    q = weighted_filtration_pairing(WeightedFiltration(f, [c * w for w in base]))
    assert q == p * c
    assert eventually_compare(q, UniPoly()) == eventually_compare(p, UniPoly())


@given(random_filtrations())
def test_filtration_hilbert_oracle(f):
    # each proper step contributes rk E * P_{F_i} - rk F_i * P_E
    P_E = hilbert_polynomial(f.ambient)
    expected = UniPoly()
    for step in f.steps[:-1]:
        expected = expected + hilbert_polynomial(step) * f.ambient.rank - P_E * step.rank
    assert filtration_hilbert(f) == expected


@given(st.data())
def test_mt_destabilizing_implies_gieseker(data):
    X = data.draw(surfaces())
    F = data.draw(bundles_on(X, min_rank=1, max_rank=3))
    extra = data.draw(bundles_on(X, min_rank=1, max_rank=3))
    E = direct_sum(F, extra)
    if destabilizes(F, E, Mode.MT):
        assert destabilizes(F, E, Mode.GIESEKER)


@given(st.data())
def test_hn_verifier_is_order_sensitive(data):
    X = data.draw(surfaces())
    pieces = [data.draw(bundles_on(X, min_rank=1, max_rank=3)) for _ in range(3)]
    slopes = [gieseker_slope(p) for p in pieces]
    order = sorted(range(3), key=lambda i: _SortKey(slopes[i]), reverse=True)
    ordered = [pieces[i] for i in order]
    distinct = all(eventually_compare(gieseker_slope(a), gieseker_slope(b)) is Ordering.GREATER
                   for a, b in zip(ordered, ordered[1:]))
    def build(seq):
        steps, acc = [], None
        for p in seq:
            acc = p if acc is None else direct_sum(acc, p)
            steps.append(acc)
        return Filtration(steps[-1], steps, [SS(f"q{i}") for i in range(len(seq))])
    assert verify_hn_certificate(build(ordered)).certified == distinct
    swapped = [ordered[1], ordered[0], ordered[2]]
    assert not verify_hn_certificate(build(swapped)).certified


class _SortKey:
    def __init__(self, p):
        self.p = p

    def __lt__(self, other):
        return eventually_compare(self.p, other.p) is Ordering.LESS
