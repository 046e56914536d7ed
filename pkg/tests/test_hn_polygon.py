"""Test HN polygons, filtrations, mass and truncated polygons."""
import random
from fractions import Fraction
from itertools import product

import pytest

from stabkit.errors import HeartViolationError, InputError
from stabkit.hn.filtration import (
    greedy_hn_oracle,
    hn_filtration,
    is_semistable,
    is_stable,
    mass,
    object_polygon,
    semistability_check,
)
from stabkit.hn.polygon import TruncatedPolygon, hn_polygon, sqrt_sum_at_least
from stabkit.lattice import linalg
from stabkit.lattice.charges import kernel
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.normalize import kernel_data
from stabkit.quiver.quiver import Quiver, direct_sum, representation_corpus, zero_representation
from stabkit.quiver.subobjects import enumerate_subobject_classes, iter_subrepresentations
from tests.conftest import charge, random_heart_charge, rc

TOL = 1e-9


def test_semistable_polygon(p1, semistable_charge):
    polygon = object_polygon(p1, semistable_charge)
    assert polygon.vertices == (rc(0, 0), rc(-1, 2))
    assert polygon.is_single_edge
    assert polygon.is_weakly_right(rc(0, 1))


def test_unstable_polygon(p1, unstable_charge):
    polygon = object_polygon(p1, unstable_charge)
    assert polygon.vertices == (rc(0, 0), rc(-1, Fraction(1, 2)), rc(-2, Fraction(3, 2)))
    assert polygon.vertex_classes == ((0, 0), (0, 1), (1, 1))
    assert not polygon.is_single_edge


def test_zero_object_polygon(semistable_charge):
    polygon = hn_polygon([(0, 0)], semistable_charge, (0, 0))
    assert polygon.vertices == (rc(0, 0),)
    assert polygon.mass().value == 0


def test_polygon_needs_zero_and_top(semistable_charge):
    with pytest.raises(InputError):
        hn_polygon([(0, 1), (1, 1)], semistable_charge, (1, 1))


def test_polygon_rejects_heart_violation(p1):
    with pytest.raises(HeartViolationError):
        object_polygon(p1, charge((-1, 1), (1, -1)))


def test_collinear_points_are_merged(s1, s2, a2):
    # S₁ ⊕ S₂ with both charges on one ray: one edge, all four classes on it
    z = charge((-1, 1), (-2, 2))
    polygon = object_polygon(direct_sum(s1, s2), z)
    assert polygon.vertices == (rc(0, 0), rc(-3, 3))


def test_filtration_of_simple(s1, unstable_charge):
    hn = hn_filtration(s1, unstable_charge)
    assert hn.factor_classes == [(1, 0)]
    assert hn.phi_plus.value == pytest.approx(0.75)


def test_filtration_of_unstable_p1(p1, unstable_charge):
    hn = hn_filtration(p1, unstable_charge)
    assert hn.factor_classes == [(0, 1), (1, 0)]
    assert hn.phi_minus < hn.phi_plus
    assert [s.dims for s in hn.steps] == [(0, 1), (1, 1)]
    assert hn.to_json()["steps"] == [[0, 1], [1, 1]]


def test_filtration_of_semistable_p1(p1, semistable_charge):
    assert hn_filtration(p1, semistable_charge).factor_classes == [(1, 1)]


def test_filtration_of_zero_object_is_an_error(a2, semistable_charge):
    with pytest.raises(InputError):
        hn_filtration(zero_representation(a2), semistable_charge)


def test_mass_examples(p1, unstable_charge, semistable_charge, a2):
    m = mass(p1, unstable_charge)
    assert m.value == pytest.approx(5 ** 0.5 / 2 + 2 ** 0.5, abs=1e-12)
    assert m.value == pytest.approx(2.5323, abs=1e-4)
    assert m.exact() == "sqrt(5/4) + sqrt(2)"
    assert m.at_least_abs(unstable_charge((1, 1)))
    assert mass(p1, semistable_charge).value == pytest.approx(5 ** 0.5)
    assert mass(zero_representation(a2), semistable_charge).value == 0


@pytest.mark.parametrize("squares, rhs, expected", [
    ([1, 1], 4, True),
    ([1, 1], 5, False),
    ([Fraction(5, 4), 2], Fraction(25, 4), True),
    ([4], 4, True),
    ([], 0, True),
    ([1, 1, 1], 9, True),
    ([1, 1, 1], 10, False),
])
def test_sqrt_sum_at_least(squares, rhs, expected):
    assert sqrt_sum_at_least(squares, rhs) is expected


def test_semistability(p1, unstable_charge, semistable_charge, s1):
    check = semistability_check(p1, unstable_charge)
    assert not check
    assert check.witness == (0, 1)
    assert is_semistable(p1, semistable_charge)
    assert is_stable(p1, semistable_charge)
    assert is_semistable(s1, unstable_charge)


def test_truncated_segment(p1, semistable_charge):
    region = TruncatedPolygon(object_polygon(p1, semistable_charge), semistable_charge)
    assert region.contains(rc(Fraction(-1, 2), 1))
    assert not region.contains(rc(0, 1))


def test_truncated_triangle(p1, unstable_charge):
    region = TruncatedPolygon(object_polygon(p1, unstable_charge), unstable_charge)
    assert region.contains(rc(Fraction(-3, 2), 1))
    assert region.contains(rc(-1, Fraction(2, 3)))
    # −1+i lies beyond the chord from 0 to Z(E)
    assert not region.contains(rc(-1, 1))
    assert not region.contains(rc(1, 1))


def test_integer_classes_within_triangle(p1, unstable_charge):
    region = TruncatedPolygon(object_polygon(p1, unstable_charge), unstable_charge)
    assert region.integer_classes_within() == [(0, 0), (0, 1), (1, 1)]


def test_integer_classes_need_kernel_data(p1):
    z = charge((-1, 1), (-1, 1))
    region = TruncatedPolygon(object_polygon(p1, z), z)
    with pytest.raises(InputError):
        region.integer_classes_within()


def test_integer_classes_with_kernel(p1, xy_form):
    z = charge((-1, 1), (-1, 1))
    region = TruncatedPolygon(object_polygon(p1, z), z)
    found = region.integer_classes_within(kernel_data(xy_form, z))
    assert (1, 1) in found and (0, 0) in found
    assert all(region.contains(z(d)) for d in found)


def corpora():
    return {
        "A2": list(representation_corpus(Quiver.linear(2), 2, 2)),
        "A3": list(representation_corpus(Quiver.linear(3), 2, 2)),
        "K2": list(representation_corpus(Quiver.kronecker(), 2, 2)),
    }


@pytest.mark.slow
@pytest.mark.parametrize("name", ["A2", "A3", "K2"])
def test_filtration_matches_greedy_oracle(name):
    reps = [r for r in corpora()[name] if not r.is_zero]
    rng = random.Random(f"oracle-{name}")
    for _ in range(5):
        z = random_heart_charge(rng, reps[0].quiver.vertex_count)
        for r in reps:
            assert hn_filtration(r, z).factor_classes == greedy_hn_oracle(r, z), (r.to_json(), z)


def support_form(z, bound: int) -> QuadraticForm:
    """|Z|² − ε·Σ(kᵢ·v)², non-negative on the box [0, bound]^m and negative on Ker Z."""
    m = z.rank
    charge_gram = linalg.matmul(linalg.transpose(z.matrix), z.matrix)
    ks = kernel(z)
    if not ks:
        return QuadraticForm(charge_gram)
    penalty = linalg.zeros(m, m)
    for k in ks:
        penalty = linalg.add(penalty, tuple(tuple(a * b for b in k) for a in k))
    penalty_form = QuadraticForm(penalty)
    box = [v for v in _box(m, bound) if any(v)]
    eps = min(z(v).abs2() for v in box) / max(max(penalty_form(v) for v in box), Fraction(1))
    return QuadraticForm(linalg.add(charge_gram, linalg.scale(penalty, -eps)))


def _box(m, bound):
    return list(product(range(bound + 1), repeat=m))


@pytest.mark.slow
def test_polygon_lemma_suite():
    pools = [[r for r in reps if not r.is_zero] for reps in corpora().values()]
    rng = random.Random("lemma-suite")
    for _ in range(1000):
        reps = rng.choice(pools)
        r = rng.choice(reps)
        z = random_heart_charge(rng, r.quiver.vertex_count)
        hn = hn_filtration(r, z)
        polygon = hn.polygon
        m_e = polygon.mass()

        # factor classes sum to the object class
        assert tuple(sum(col) for col in zip(*hn.factor_classes)) == r.dims
        # semistable iff the left boundary is a single edge
        assert is_semistable(r, z) == polygon.is_single_edge

        for s in iter_subrepresentations(r):
            if not any(s.dims):
                continue
            sub_polygon = object_polygon(s.as_representation(), z)
            assert all(polygon.is_weakly_right(w) for w in sub_polygon.vertices)
            m_a = sub_polygon.mass().value
            assert m_a - float(z(s.dims).re) <= m_e.value - float(z(r.dims).re) + TOL

        q = support_form(z, 2)
        kd = kernel_data(q, z)
        assert all(q(c) >= 0 for c in hn.factor_classes)
        assert kd.norm(r.dims) <= m_e.value + TOL


def test_subobject_classes_stay_inside_polygon(p1, unstable_charge):
    polygon = object_polygon(p1, unstable_charge)
    for c in enumerate_subobject_classes(p1):
        assert polygon.is_weakly_right(unstable_charge(c))
