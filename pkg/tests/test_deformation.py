"""Test deformation paths, walls, Jordan-Hölder factors and path lifting."""
import math
import random
from fractions import Fraction

import pytest

from stabkit.deformation import lift as lift_module
from stabkit.deformation import poly
from stabkit.deformation.direction import (
    DeformationDirection,
    decompose,
    operator_norm,
    operator_norm_below,
)
from stabkit.deformation.jordan_holder import WallQReport, check_Q_at_wall, jordan_holder
from stabkit.deformation.lift import continuity_check, lift_path, split_legs
from stabkit.deformation.path import DeformationPath, is_stability_function_at, kernel_jumps
from stabkit.deformation.walls import (
    choose_destabilizer,
    destabilizing_intervals,
    find_walls,
    group_roots,
    status_profile,
)
from stabkit.errors import InputError, MathCheckError, NotSemistableError, PathExitError
from stabkit.lattice import linalg
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.normalize import kernel_data
from stabkit.quiver.quiver import Quiver, direct_sum, representation_corpus
from stabkit.slicing.prestability import ShiftedObject, make_prestability
from tests.conftest import charge

HALF = Fraction(1, 2)

ALIGNED = {
    "A3": (Quiver.linear(3), charge((0, 1), (0, 1), (0, 1))),
    "K2": (Quiver.kronecker(), charge((-1, 1), (-1, 1))),
}


def shuffled_order(rng):
    def order(candidates):
        rng.shuffle(candidates)
        return candidates

    return order


@pytest.fixture
def wall_charge():
    """Z(e₁) = Z(e₂) = −1+i, the A₂ charge at t = ½."""
    return charge((-1, 1), (-1, 1))


@pytest.fixture
def sigma(unstable_charge, a2_heart):
    return make_prestability(unstable_charge, a2_heart)


def test_charge_along_path(a2_path, wall_charge):
    assert a2_path.charge_at(HALF) == wall_charge
    assert a2_path.is_imaginary and not a2_path.is_real
    with pytest.raises(InputError):
        a2_path.charge_at(2)


def test_path_from_dict(unstable_charge):
    path = DeformationPath.from_dict(
        {"Z0": unstable_charge.to_json(), "W": [["0", "0"], ["0", "1"]]}
    )
    assert path.z0 == unstable_charge
    assert path.w == ((0, 0), (0, 1))
    with pytest.raises(InputError):
        DeformationPath.from_dict({"Z0": unstable_charge.to_json(), "u": [["1"], ["0"]]})
    with pytest.raises(InputError):
        DeformationPath.from_dict({"W": [["0", "0"], ["0", "1"]]})


def test_restricted_and_between(a2_path, unstable_charge, wall_charge):
    tail = a2_path.restricted(HALF, 1)
    assert tail.z0 == wall_charge
    assert tail.end == a2_path.end
    assert DeformationPath.between(unstable_charge, wall_charge).end == wall_charge
    assert DeformationPath.constant(unstable_charge).is_constant()


def test_kernel_jumps(a2_path, unstable_charge):
    assert kernel_jumps(a2_path) == [HALF]
    assert kernel_jumps(DeformationPath.constant(unstable_charge)) == []


def test_stability_function_along_path(a2_path, unstable_charge):
    assert is_stability_function_at(a2_path, 0, [(1, 0), (0, 1), (1, 1)])
    falling = DeformationPath(unstable_charge, ((0, 0), (0, -1)))
    check = is_stability_function_at(falling, 1, [(1, 0), (0, 1)])
    assert not check
    assert check.witness == (0, 1)


def test_polynomial_roots():
    (root,) = poly.roots_in_unit_interval((Fraction(-1, 4), Fraction(0), Fraction(1)))
    assert root.exact and root.value == HALF
    (root,) = poly.roots_in_unit_interval((Fraction(-1, 2), Fraction(0), Fraction(1)))
    assert not root.exact
    assert root.lower < Fraction(7071, 10000) < root.upper
    assert poly.roots_in_unit_interval((Fraction(0),) * 3) == []


def test_wall_of_p1(p1, a2_path, xy_form):
    (wall,) = find_walls(p1, a2_path, xy_form)
    assert wall.t_value == HALF
    assert wall.exact
    assert wall.destabilizer_class == (0, 1)
    assert wall.status_before == "unstable"
    assert wall.status_after == "semistable"
    assert wall.to_json()["t"] == "1/2"


def test_simples_have_no_walls(s1, a2_path):
    assert find_walls(s1, a2_path) == []


def test_wall_with_two_aligned_destabilizers(s1, s2, a2_path):
    (wall,) = find_walls(direct_sum(s1, s2), a2_path)
    assert wall.t_value == HALF
    # (0, 1) has the larger phase before the wall
    assert wall.destabilizer_class == (0, 1)
    assert (wall.status_before, wall.status_after) == ("unstable", "unstable")


def test_overlapping_roots_form_one_group():
    p = (Fraction(-1, 2), Fraction(0), Fraction(1))
    near = poly.Root(Fraction(7071, 10000), Fraction(7072, 10000), False)
    overlapping = poly.Root(Fraction(70715, 100000), Fraction(70725, 100000), False)
    exact = poly.Root(HALF, HALF, True)
    groups = group_roots([(overlapping, (0, 1), p), (exact, (1, 0), p), (near, (1, 0), p),
                          (exact, (0, 1), p)])
    assert [g.exact for g in groups] == [True, False]
    assert groups[0].value == HALF
    assert sorted(a for a, _ in groups[0].members) == [(0, 1), (1, 0)]
    assert (groups[1].lower, groups[1].upper) == (Fraction(7071, 10000), Fraction(70725, 100000))
    assert len(groups[1].members) == 2


def test_choose_destabilizer_by_sign():
    falling = (Fraction(1), Fraction(-2), Fraction(0))
    rising = (Fraction(-1), Fraction(2), Fraction(0))
    members = [((0, 1), rising), ((1, 0), falling)]
    assert choose_destabilizer(members, Fraction(1, 4)) == (1, 0)
    assert choose_destabilizer(members, Fraction(3, 4)) == (0, 1)
    assert choose_destabilizer(members, HALF) == (0, 1)


def test_destabilizing_intervals_and_profile(p1, a2_path):
    assert destabilizing_intervals(a2_path, (1, 1), (0, 1)) == [(Fraction(0), HALF)]
    walls = find_walls(p1, a2_path)
    assert status_profile(p1, a2_path, walls) == [(Fraction(1, 4), False), (Fraction(3, 4), True)]


def test_jordan_holder_at_the_wall(p1, wall_charge, xy_form):
    jh = jordan_holder(p1, wall_charge)
    assert jh.factor_classes == ((0, 1), (1, 0))
    assert jh.is_strictly_semistable
    report = check_Q_at_wall(jh, xy_form, kernel_data(xy_form, wall_charge))
    assert report.passed
    assert report.total == 1
    assert not report.equality
    assert report.chain_applicable
    assert report.charge_sum >= report.projection_sum >= report.projection_of_sum - 1e-12
    assert report.chain_holds is True
    assert report.to_json()["chain_holds"] is True


def test_wall_report_fails_when_chain_breaks():
    values = (((0, 1), Fraction(0)), ((1, 0), Fraction(0)))
    broken = WallQReport((1, 1), values, Fraction(1), True, 1.0, 2.0, 1.5)
    assert broken.chain_holds is False
    assert not broken.passed
    within = WallQReport((1, 1), values, Fraction(1), True, 1.0, 1.0 + 1e-12, 1.0)
    assert within.chain_holds and within.passed
    skipped = WallQReport((1, 1), values, Fraction(1), False, 1.0, 2.0, 1.5)
    assert skipped.chain_holds is None
    assert skipped.passed
    assert WallQReport((1, 1), values, Fraction(1), True).chain_holds is None


def test_jordan_holder_respects_candidate_order(s1, s2, wall_charge):
    jh = jordan_holder(direct_sum(s1, s2), wall_charge, candidate_order=lambda c: list(reversed(c)))
    assert jh.factor_classes == ((0, 1), (1, 0))


def test_jordan_holder_of_p1_under_shuffled_candidates(p1, wall_charge):
    rng = random.Random("jh-p1")
    for _ in range(10):
        jh = jordan_holder(p1, wall_charge, candidate_order=shuffled_order(rng))
        assert jh.factor_classes == ((0, 1), (1, 0))


@pytest.mark.parametrize("name", sorted(ALIGNED))
def test_jordan_holder_factors_ignore_candidate_order(name):
    quiver, z = ALIGNED[name]
    rng = random.Random(f"jh-{name}")
    objects = [r for r in representation_corpus(quiver, 2, 2) if sum(r.dims) >= 2]
    for r in rng.sample(objects, 6):
        # all simples share one phase, so the factors are the simples with multiplicity
        expected = sorted(
            tuple(int(v == i) for v in range(quiver.vertex_count))
            for i, d in enumerate(r.dims) for _ in range(d)
        )
        assert sorted(jordan_holder(r, z).factor_classes) == expected
        for _ in range(4):
            jh = jordan_holder(r, z, candidate_order=shuffled_order(rng))
            assert sorted(jh.factor_classes) == expected, r.to_json()


def test_jordan_holder_rejects_unstable_objects(p1, unstable_charge):
    with pytest.raises(NotSemistableError) as info:
        jordan_holder(p1, unstable_charge)
    assert info.value.witness == (0, 1)


def test_operator_norm(xy_form, wall_charge):
    kd = kernel_data(xy_form, wall_charge)
    u = DeformationDirection(((1,), (0,)))
    assert operator_norm(u, kd) == pytest.approx(1.0)
    assert not operator_norm_below(u, kd, 1)
    assert operator_norm_below(u, kd, 2)
    diagonal = DeformationDirection(((HALF,), (HALF,)))
    assert operator_norm(diagonal, kd) == pytest.approx(math.sqrt(0.5))


def test_normal_form_path(xy_form, wall_charge):
    u = DeformationDirection(((1,), (0,)), real=True)
    path = DeformationPath.normal(wall_charge, u, xy_form)
    assert path.normal_form
    assert path.w == ((HALF, -HALF), (0, 0))
    # u∘p vanishes off the kernel
    assert path.end((1, 1)) == wall_charge((1, 1))
    assert path.to_json()["u"] == [["1"], ["0"]]


def test_real_direction_rejects_imaginary_part():
    with pytest.raises(InputError):
        DeformationDirection(((1,), (1,)), real=True)


def test_decompose_pure_scaling(unstable_charge, xy_form):
    g, u = decompose(unstable_charge.scaled(2), unstable_charge, xy_form)
    assert g.matrix == linalg.scale(linalg.identity(2), HALF)
    assert u.dim == 0


def test_decompose_at_the_wall(wall_charge, xy_form):
    zp = charge((-1, 1), (-1, 2))
    g, u = decompose(zp, wall_charge, xy_form)
    assert g.act_charge(zp)((1, 1)) == wall_charge((1, 1))
    assert u.dim == 1
    difference = u.as_charge_difference(kernel_data(xy_form, wall_charge))
    assert linalg.add(wall_charge.matrix, difference) == g.act_charge(zp).matrix


def test_decompose_rejects_orientation_reversal(unstable_charge, semistable_charge, xy_form):
    with pytest.raises(MathCheckError):
        decompose(semistable_charge, unstable_charge, xy_form)


def test_split_legs(unstable_charge):
    mixed = DeformationPath(unstable_charge, ((1, 0), (0, 1)))
    real, imaginary = split_legs(mixed)
    assert (real.kind, imaginary.kind) == ("real", "imaginary")
    assert imaginary.path.z0 == real.path.end
    assert imaginary.path.end == mixed.end
    assert imaginary.conjugated_velocity().matrix[1] == (0, 0)
    assert split_legs(DeformationPath.constant(unstable_charge)) == []


def test_continuity_near_the_start(sigma, a2_path, s1, s2, p1):
    sample = [ShiftedObject(s1), ShiftedObject(s2), ShiftedObject(p1)]
    report = continuity_check(sigma, a2_path, Fraction(1, 8), sample)
    assert report.d_prime == pytest.approx((math.atan(0.625) - math.atan(0.5)) / math.pi)
    assert report.passed
    assert not report.flagged
    assert report.witness == "[0, 1]"
    with pytest.raises(InputError):
        continuity_check(sigma, a2_path, 0, sample)


def test_lift_a2_path(sigma, xy_form, a2_path, s1, s2, p1):
    report = lift_path(sigma, xy_form, a2_path, steps=8, corpus=[s1, s2, p1])
    assert report.passed
    (leg,) = report.legs
    assert leg.leg.kind == "imaginary"
    assert leg.pieces == 1
    assert leg.kernel_jumps == (HALF,)
    assert [w.t_value for w in report.walls] == [HALF]

    def p1_status(t):
        return report.row_at(t).statuses[2].status

    assert p1_status(Fraction(1, 4)) == "unstable"
    assert p1_status(HALF) == "strictly semistable"
    assert p1_status(Fraction(3, 4)) == "stable"

    wall_row = report.row_at(HALF)
    assert wall_row.kernel_dim == 1
    assert "kernel jump" in wall_row.reasons
    (wall_check,) = wall_row.wall_checks
    assert wall_check.passed and wall_check.total == 1

    first = report.row_at(Fraction(1, 8))
    assert first.continuity is not None
    assert not first.continuity.flagged
    assert not first.continuity_enforced
    assert report.to_json()["passed"] is True


def test_continuity_enforced_on_normal_form_leg(a2_heart, wall_charge, xy_form, s1, s2, p1):
    u = DeformationDirection(((1,), (0,)), real=True)
    path = DeformationPath.normal(wall_charge, u, xy_form)
    sigma0 = make_prestability(wall_charge, a2_heart)
    report = lift_path(sigma0, xy_form, path, steps=8, corpus=[s1, s2, p1])
    for t in (Fraction(1, 8), Fraction(1, 4), Fraction(3, 8)):
        row = report.row_at(t)
        assert row.continuity_enforced
        assert row.continuity is not None
        assert row.continuity.passed
        assert not row.continuity.flagged
        assert row.continuity.d_prime <= row.continuity.linear_bound
        assert row.passed
    assert report.passed


def test_lift_uses_configured_refine_width(monkeypatch, sigma, xy_form, a2_path, s1, s2, p1):
    widths = []
    search = lift_module.find_walls

    def recording(r, path, form=None, budget=None, width=poly.DEFAULT_WIDTH):
        widths.append(width)
        return search(r, path, form, budget, width)

    monkeypatch.setattr(lift_module, "find_walls", recording)
    lift_path(sigma, xy_form, a2_path, steps=4, corpus=[s1, s2, p1], width=Fraction(1, 1000))
    assert widths
    assert set(widths) == {Fraction(1, 1000)}


def test_lift_exits_when_kernel_is_not_negative(sigma, a2_path, s1, s2, p1):
    with pytest.raises(PathExitError) as info:
        lift_path(sigma, QuadraticForm.diagonal([1, 1]), a2_path, steps=4, corpus=[s1, s2, p1])
    assert info.value.t == HALF
    assert info.value.witness == (1, -1)


def test_lift_needs_matching_start(sigma, xy_form, semistable_charge):
    with pytest.raises(InputError):
        lift_path(sigma, xy_form, DeformationPath.constant(semistable_charge), steps=4)


def test_lift_constant_path(sigma, xy_form, unstable_charge, s1, s2, p1):
    report = lift_path(sigma, xy_form, DeformationPath.constant(unstable_charge), steps=4,
                       corpus=[s1, s2, p1])
    (row,) = report.rows
    assert row.reasons == ("start",)
    assert report.passed
