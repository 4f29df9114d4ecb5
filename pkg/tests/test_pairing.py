import pytest
from hypothesis import given
from hypothesis import strategies as st

from gieseker_hn.bundles import VirtualBundle, dual, hilbert_polynomial, structure_sheaf
from gieseker_hn.cohomology import PolarizedVariety
from gieseker_hn.pairing import (AdmissibleSub, NonIsotropicError, PairingError,
                                 PairingStructure, SumObject, Symmetry, Tower, annihilator,
                                 filtration_matches_parabolic, is_isotropic,
                                 orthogonal_semistability_check)
from gieseker_hn.scalar_poly import UniPoly

from conftest import k3_surfaces, paired_objects, surfaces

S = AdmissibleSub


def test_annihilator_of_o_is_tx_plus_vdual(k3):
    for P in (k3.orthogonal, k3.symplectic):
        perp = annihilator(S((0, 1)), P, k3.obj)
        assert perp == S((1, 2))
        assert k3.obj.describe(perp) == "TX⊕V∨"
        assert k3.obj.bundle(perp) == k3.TX + k3.Vd


def test_annihilator_extremes(k3):
    P = k3.orthogonal
    assert annihilator(k3.obj.zero(), P, k3.obj) == S((2, 2))
    assert annihilator(k3.obj.full(), P, k3.obj) == S((0, 0))


def test_isotropy(k3):
    P = k3.orthogonal
    assert is_isotropic(S((0, 1)), P, k3.obj)
    assert is_isotropic(S((1, 0)), P, k3.obj)
    assert not is_isotropic(k3.obj.full(), P, k3.obj)
    assert not is_isotropic(S((2, 1)), P, k3.obj)


def test_def54_examples(k3):
    verdicts = orthogonal_semistability_check([S((0, 1)), S((0, 0)), S((1, 0))],
                                              k3.orthogonal, k3.obj)
    assert [v.difference for v in verdicts] == [UniPoly()] * 3
    assert all(v.holds and not v.strict for v in verdicts)
    assert verdicts[2].annihilator == S((2, 1))


def test_def54_rejects_non_isotropic(k3):
    with pytest.raises(NonIsotropicError, match=r"\(2,1\)"):
        orthogonal_semistability_check([S((0, 1)), S((2, 1))], k3.orthogonal, k3.obj)


def test_hn_filtration_is_not_parabolic(k3):
    for P in (k3.orthogonal, k3.symplectic):
        v = filtration_matches_parabolic(k3.hn_subs, P, k3.obj)
        assert not v.compatible
        assert v.witness == S((0, 1))
        assert v.witness_annihilator == S((1, 2))
        assert not v.annihilator_is_step


def test_isotropic_flag_is_parabolic(k3):
    v = filtration_matches_parabolic([S((0, 1)), S((1, 2)), S((2, 2))], k3.orthogonal, k3.obj)
    assert v.compatible


def test_trivial_filtration_is_parabolic(k3):
    assert filtration_matches_parabolic([], k3.orthogonal, k3.obj).compatible
    assert filtration_matches_parabolic([k3.obj.full()], k3.symplectic, k3.obj).compatible


def test_parabolic_steps_must_increase(k3):
    with pytest.raises(PairingError):
        filtration_matches_parabolic([S((2, 1)), S((0, 1))], k3.orthogonal, k3.obj)


def test_pairing_construction_checks(k3):
    with pytest.raises(PairingError):
        PairingStructure((0, 1))
    with pytest.raises(PairingError):
        PairingStructure((1, 2, 0))
    bad = SumObject((k3.V_tower, k3.V_tower))
    with pytest.raises(PairingError, match="not dual"):
        PairingStructure((1, 0)).validate(bad)
    L = VirtualBundle(k3.X, 1, [1], 1, label="L")
    mismatched = SumObject((Tower((L,), (), "L"), Tower((L,), (), "L'")))
    with pytest.raises(PairingError, match="not dual"):
        PairingStructure((1, 0)).validate(mismatched)


def test_tower_flag_count():
    X = PolarizedVariety.k3(2)
    O = structure_sheaf(X)
    with pytest.raises(PairingError):
        Tower((O, O), ("split", "split"), "bad")
    with pytest.raises(PairingError):
        Tower((), (), "empty")


def test_lattice_operations():
    a, b = S((1, 2)), S((2, 0))
    assert a.meet(b) == S((1, 0))
    assert a.join(b) == S((2, 2))
    assert a.meet(b) <= a <= a.join(b)
    assert not a <= b and not b <= a


@given(st.data())
def test_annihilator_involution_order_and_rank(data):
    X = data.draw(surfaces())
    obj, P = data.draw(paired_objects(X))
    total_rank = obj.total().rank
    subs = list(obj.all_subs())
    for A in subs:
        perp = annihilator(A, P, obj)
        assert annihilator(perp, P, obj) == A
        assert obj.rank(A) + obj.rank(perp) == total_rank
    for A in subs[::3]:
        for B in subs[::2]:
            if A <= B:
                assert annihilator(B, P, obj) <= annihilator(A, P, obj)


@given(st.data())
def test_symmetry_type_does_not_change_verdicts(data):
    X = data.draw(surfaces())
    obj, P = data.draw(paired_objects(X))
    other = PairingStructure(P.partner, Symmetry.ANTISYMMETRIC
                             if P.symmetry is Symmetry.SYMMETRIC else Symmetry.SYMMETRIC)
    subs = sorted(obj.all_subs(), key=lambda s: sum(s.prefix))
    chain = [subs[0]]
    for s in subs:
        if chain[-1] < s and data.draw(st.booleans()):
            chain.append(s)
    for A in subs:
        assert annihilator(A, P, obj) == annihilator(A, other, obj)
    assert (filtration_matches_parabolic(chain, P, obj)
            == filtration_matches_parabolic(chain, other, obj))


@given(st.data())
def test_def54_difference_vanishes_for_degree_zero_factors(data):
    X = data.draw(k3_surfaces)
    obj, P = data.draw(paired_objects(X, degree_zero=True))
    isotropic = [A for A in obj.all_subs() if is_isotropic(A, P, obj)]
    for v in orthogonal_semistability_check(isotropic, P, obj):
        assert v.difference == UniPoly()


@given(st.data())
def test_def54_difference_is_p_f_minus_p_f_dual(data):
    # in general F⊥ is numerically E - F∨, so the difference is P_F - P_{F∨}
    X = data.draw(surfaces())
    obj, P = data.draw(paired_objects(X))
    isotropic = [A for A in obj.all_subs() if is_isotropic(A, P, obj)]
    for v in orthogonal_semistability_check(isotropic, P, obj):
        if any(v.sub.prefix):
            F = obj.bundle(v.sub)
            assert v.difference == hilbert_polynomial(F) - hilbert_polynomial(dual(F))
        else:
            assert v.difference == UniPoly()


def test_def54_detects_positive_degree_isotropic():
    X = PolarizedVariety.k3(2)
    L = VirtualBundle(X, 1, [1], 1, label="O(H)")
    obj = SumObject((Tower((L,), (), "O(H)"), Tower((dual(L),), (), "O(-H)")))
    P = PairingStructure((1, 0)).validate(obj)
    (v,) = orthogonal_semistability_check([S((1, 0))], P, obj)
    # on a K3, P_F(m) - P_F(-m) = 2 deg(F) m with deg O(H) = 2
    assert v.difference == UniPoly([0, 4])
    assert not v.holds
