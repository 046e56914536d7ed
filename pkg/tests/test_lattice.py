"""Test exact rationals, charges, forms, kernel data and phases."""
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabkit.errors import (
    HeartViolationError,
    InputError,
    NotNegativeDefiniteError,
    SignatureError,
    VanishingChargeError,
)
from stabkit.lattice import linalg
from stabkit.lattice.charges import CentralCharge, as_class, kernel
from stabkit.lattice.forms import QuadraticForm, definiteness_witness, diagonalize, signature
from stabkit.lattice.gl2 import Gl2Element
from stabkit.lattice.normalize import complement_metric, kernel_data, normalize
from stabkit.lattice.phase import PhasePoint, heart_charge, phase, phase_of_charge
from stabkit.lattice.rational import RationalComplex, parse_rational, rational_sqrt
from stabkit.lattice.shortvec import enumerate_short_vectors, ldl
from tests.conftest import charge, rc


def test_parse_rational_accepts_exact_values():
    assert parse_rational(3) == 3
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2/6 ") == Fraction(-1, 3)


@pytest.mark.parametrize("value", [0.5, True, "1/0", "abc", None])
def test_parse_rational_rejects_inexact_values(value):
    with pytest.raises(InputError):
        parse_rational(value)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None


def test_rational_complex_basics():
    w = rc(-1, 2)
    assert str(w) == "-1+2i"
    assert w.rotate_quarter() == rc(-2, -1)
    assert w.abs2() == 5
    assert rc(1, 0).cross(rc(0, 1)) == 1
    assert RationalComplex.parse(["1/2", -3]) == rc(Fraction(1, 2), -3)
    assert RationalComplex.parse({"re": 1}) == rc(1, 0)


@pytest.mark.parametrize("w, inside", [
    (rc(0, 1), True),
    (rc(-1, 0), True),
    (rc(1, 0), False),
    (rc(0, 0), False),
    (rc(3, -1), False),
])
def test_upper_half_plane(w, inside):
    assert w.in_upper_half_plane() is inside


def test_central_charge_parse_and_evaluate(unstable_charge):
    z = CentralCharge.parse([["-1", "-1"], ["1", "1/2"]])
    assert z == unstable_charge
    assert z((1, 1)) == rc(-2, Fraction(3, 2))
    assert z.column(1) == rc(-1, Fraction(1, 2))
    with pytest.raises(InputError):
        z((1, 0, 0))
    with pytest.raises(InputError):
        CentralCharge.parse([[1, 2]])


def test_charge_kernel_at_the_wall():
    z = charge((-1, 1), (-1, 1))
    assert kernel(z) == [(1, -1)]
    assert z.image_rank() == 1


def test_extended_charge_appends_values(semistable_charge):
    z = semistable_charge.extended([rc(2, 0)])
    assert z.rank == 3
    assert z((0, 0, 1)) == rc(2, 0)


def test_as_class_rejects_fractions():
    assert as_class(["2", 3]) == (2, 3)
    with pytest.raises(InputError):
        as_class(["1/2"])


def test_signature_of_small_forms(xy_form):
    assert signature(xy_form) == (1, 1, 0)
    assert signature(QuadraticForm.diagonal([1, 0, -1])) == (1, 1, 1)
    assert signature(QuadraticForm(((0, 1), (1, 0)))) == (1, 1, 0)


def test_form_requires_symmetric_gram():
    with pytest.raises(InputError):
        QuadraticForm(((0, 1), (2, 0)))


def unimodular(n, ops):
    """Integer matrix of determinant 1 built from elementary row additions."""
    m = [list(r) for r in linalg.identity(n)]
    for i, j, c in ops:
        i, j = i % n, j % n
        if i != j:
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return tuple(tuple(r) for r in m)


@settings(max_examples=50, deadline=None)
@given(
    diag=st.lists(st.integers(-3, 3), min_size=1, max_size=4),
    ops=st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6),
)
def test_signature_is_a_congruence_invariant(diag, ops):
    q = QuadraticForm.diagonal(diag)
    s = unimodular(len(diag), ops)
    expected = (sum(d > 0 for d in diag), sum(d < 0 for d in diag), sum(d == 0 for d in diag))
    assert signature(q.congruent(s)) == expected


@settings(max_examples=50, deadline=None)
@given(
    diag=st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=4),
    ops=st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6),
)
def test_diagonalize_rows_give_congruence(diag, ops):
    gram = QuadraticForm.diagonal(diag).congruent(unimodular(len(diag), ops)).gram
    d, p = diagonalize(gram)
    congruent = linalg.matmul(linalg.matmul(p, gram), linalg.transpose(p))
    assert congruent == QuadraticForm.diagonal(d).gram


def test_definiteness_witness(xy_form):
    assert definiteness_witness(xy_form, [(1, -1)]) is None
    assert definiteness_witness(xy_form, [(1, 1)]) == (1, 1)


def test_kernel_data_at_the_wall(xy_form):
    z = charge((-1, 1), (-1, 1))
    kd = kernel_data(xy_form, z)
    kd.verify()
    assert kd.dim == 1
    assert kd.kernel_basis == ((1, -1),)
    assert kd.neg_gram == ((1,),)
    assert kd.project((1, 0)) == (Fraction(1, 2), Fraction(-1, 2))
    assert kd.norm2((1, 0)) == Fraction(1, 4)
    assert kd.complement_basis() == [(1, 1)]


def test_kernel_data_rejects_indefinite_kernel():
    z = charge((-1, 1), (-1, 1))
    with pytest.raises(NotNegativeDefiniteError) as info:
        kernel_data(QuadraticForm.diagonal([1, 1]), z)
    assert info.value.witness == (1, -1)


def test_kernel_data_trivial_kernel(xy_form, unstable_charge):
    kd = kernel_data(xy_form, unstable_charge)
    assert kd.dim == 0
    assert kd.norm((3, 5)) == 0.0


def test_complement_metric_and_normalization():
    q = QuadraticForm.diagonal([1, 1, -1])
    z = charge((2, 0), (0, 1), (0, 0))
    kd = kernel_data(q, z)
    assert complement_metric(kd, z) == ((Fraction(1, 4), 0), (0, 1))
    norm = normalize(q, z)
    assert norm.g.is_rational
    assert norm.z_norm == charge((1, 0), (0, 1), (0, 0))
    assert norm.charge_abs2((1, 0, 0)) == 1


def test_normalization_with_irrational_scale():
    q = QuadraticForm.diagonal([1, 1, -1])
    z = charge((1, 0), (0, 1), (Fraction(1, 2), 0))
    norm = normalize(q, z)
    assert not norm.g.is_rational
    assert norm.z_norm is None
    for v in product(range(-1, 2), repeat=3):
        # Q(v) = |g Z(v)|² − ‖p(v)‖²
        assert q(v) == norm.charge_abs2(v) - norm.kernel.norm2(v)


def test_normalize_needs_signature_two(xy_form, unstable_charge):
    with pytest.raises(SignatureError):
        normalize(xy_form, unstable_charge)


def test_gl2_quarter_turn_and_inverse(semistable_charge):
    g = Gl2Element.quarter_turn()
    assert g.act_vector(rc(1, 0)) == rc(0, 1)
    assert g.compose(Gl2Element.quarter_turn(-1)).matrix == linalg.identity(2)
    assert g.inverse().compose(g).matrix == linalg.identity(2)
    assert g.act_charge(semistable_charge)((1, 0)) == rc(-1, -1)
    with pytest.raises(InputError):
        Gl2Element(((1, 0), (0, -1)))


def test_gl2_parse_roundtrip():
    g = Gl2Element.parse({"matrix": [["1", "1"], ["0", "2"]]})
    assert Gl2Element.parse(g.to_json()).matrix == g.matrix


def test_phase_points_compare_exactly():
    a = PhasePoint(rc(-1, 1))
    b = PhasePoint(rc(-1, Fraction(1, 2)))
    assert a.value == pytest.approx(0.75)
    assert a < b
    assert PhasePoint(rc(-2, 2)) == a
    assert a.shifted(1) > b
    assert a.shifted(1).value == pytest.approx(1.75)


def test_phase_of_charge_outside_h():
    p = phase_of_charge(rc(1, -1))
    assert p.shift == -1
    assert p.value == pytest.approx(-0.25)
    with pytest.raises(InputError):
        PhasePoint(rc(1, -1))


def test_heart_charge_violations(unstable_charge):
    assert phase(unstable_charge, (1, 0)).value == pytest.approx(0.75)
    with pytest.raises(HeartViolationError) as info:
        heart_charge(charge((1, -1), (0, 1)), (1, 0))
    assert info.value.witness == (1, 0)
    with pytest.raises(VanishingChargeError):
        heart_charge(charge((0, 0), (0, 1)), (1, 0))


@settings(max_examples=40, deadline=None)
@given(
    entries=st.lists(st.integers(-2, 2), min_size=3, max_size=3),
    diag=st.lists(st.integers(1, 3), min_size=2, max_size=2),
    radius=st.integers(0, 9),
)
def test_short_vectors_match_brute_force(entries, diag, radius):
    # F = AᵀA + I dominates the identity, so |xᵢ| ≤ √R bounds the box
    a = ((diag[0], entries[0]), (entries[1], diag[1]))
    gram = linalg.add(linalg.matmul(linalg.transpose(linalg.matrix(a)), linalg.matrix(a)),
                      linalg.identity(2))
    found = enumerate_short_vectors(gram, radius)
    form = QuadraticForm(gram)
    expected = sorted(v for v in product(range(-3, 4), repeat=2) if form(v) <= radius)
    assert found == expected


def test_ldl_rejects_indefinite_gram():
    with pytest.raises(InputError):
        ldl(((1, 0), (0, -1)))


def test_linalg_inverse_and_nullspace():
    m = linalg.matrix(((2, 1), (1, 1)))
    assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(2)
    assert linalg.det(m) == 1
    assert linalg.nullspace(linalg.matrix(((1, 1, 0),))) and linalg.rank(m) == 2
    assert linalg.primitive_integer((Fraction(-1, 2), Fraction(1, 3))) == (3, -2)


@pytest.mark.parametrize("shift", [-2, -1, 0, 1, 3])
def test_phase_lift_commutes_with_shifts(shift):
    w = rc(-1, 1)
    assert Gl2Element.identity().act_phase_pair(w, shift) == (w, shift)
    charge, new_shift = Gl2Element.rotation_by_pi().act_phase_pair(w, shift)
    assert PhasePoint(charge, new_shift) == PhasePoint(w, shift + 1)
