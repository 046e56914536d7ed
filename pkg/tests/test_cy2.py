"""Test roots, the support constant C and P₀ certificates on Mukai-type lattices."""
from fractions import Fraction

import pytest

from stabkit.cy2.mukai import (
    MukaiLattice,
    build_support_Q,
    certify,
    certify_path,
    check_P0_membership,
    compute_C,
    enumerate_roots_near,
)
from stabkit.deformation.path import DeformationPath
from stabkit.errors import InputError, NotInP0Error
from stabkit.lattice.forms import QuadraticForm
from tests.conftest import charge


@pytest.fixture
def kernel_root_charge():
    """Z(1, 0) = Z(0, 1) = i, so δ = (1, −1) lies in Ker Z."""
    return charge((0, 1), (0, 1))


def test_roots_of_the_hyperbolic_plane(hyperbolic, hyperbolic_charge):
    roots = enumerate_roots_near(hyperbolic, hyperbolic_charge, 2)
    assert list(roots) == [(-1, 1), (1, -1)]
    assert roots.in_kernel() == []
    assert len(enumerate_roots_near(hyperbolic, hyperbolic_charge, 1)) == 0


def test_negative_bound_is_rejected(hyperbolic, hyperbolic_charge):
    with pytest.raises(InputError):
        enumerate_roots_near(hyperbolic, hyperbolic_charge, -1)


def test_support_constant_sentinel(hyperbolic, hyperbolic_charge):
    c = compute_C(hyperbolic, hyperbolic_charge)
    assert c.square == 1
    assert c.provenance == "sentinel"
    assert c.exact() == "1"


def test_support_constant_attained(hyperbolic, hyperbolic_charge):
    c = compute_C(hyperbolic, hyperbolic_charge.scaled(Fraction(1, 2)))
    assert c.square == Fraction(1, 2)
    assert c.provenance == "attained"
    assert c.witness == (1, -1)
    assert c.exact() == "sqrt(1/2)"
    assert c.value == pytest.approx(0.5 ** 0.5)


def test_kernel_root_is_not_in_p0(hyperbolic, kernel_root_charge):
    with pytest.raises(NotInP0Error) as info:
        compute_C(hyperbolic, kernel_root_charge)
    assert info.value.witness == (1, -1)
    check = check_P0_membership(hyperbolic, kernel_root_charge)
    assert not check
    assert check.witness == (1, -1)


def test_indefinite_kernel_is_not_in_p0(hyperbolic):
    check = check_P0_membership(hyperbolic, charge((0, 1), (0, 0)))
    assert not check
    assert check.witness == (0, 1)


def test_support_form(hyperbolic, hyperbolic_charge):
    q = build_support_Q(hyperbolic, hyperbolic_charge)
    assert q.gram == ((2, 1), (1, 2))
    assert q((1, -1)) == 2


def test_certificate(hyperbolic, hyperbolic_charge):
    cert = certify(hyperbolic, hyperbolic_charge)
    assert cert.supports([(1, -1), (-1, 1), (1, 0)])
    data = cert.to_json()
    assert data["C"]["provenance"] == "sentinel"
    assert [r["Q"] for r in data["Q_on_roots"]] == ["2", "2"]


def test_certify_rejects_kernel_root(hyperbolic, kernel_root_charge):
    with pytest.raises(NotInP0Error):
        certify(hyperbolic, kernel_root_charge)


def test_certify_path_stops_at_kernel_root(hyperbolic, hyperbolic_charge, kernel_root_charge):
    path = DeformationPath.between(hyperbolic_charge, kernel_root_charge)
    result = certify_path(hyperbolic, path, [0, Fraction(1, 2), 1])
    assert not result.passed
    assert result.parameters == (0, Fraction(1, 2))
    assert result.failure.witness == "1"
    assert result.to_json()["failure"]["witness"] == "1"


def test_certify_constant_path(hyperbolic, hyperbolic_charge):
    result = certify_path(hyperbolic, DeformationPath.constant(hyperbolic_charge), [1, 0])
    assert result.passed
    assert result.parameters == (0, 1)
    with pytest.raises(InputError):
        certify_path(hyperbolic, DeformationPath.constant(hyperbolic_charge), [])


def test_lattice_parse():
    lattice = MukaiLattice.parse({"gram": [["0", "1"], ["1", "0"]]})
    assert lattice.is_even
    assert lattice((1, -1)) == -2
    with pytest.raises(InputError):
        MukaiLattice(QuadraticForm.diagonal([1, 0]))
    with pytest.raises(InputError):
        MukaiLattice.parse({"rows": []})
