"""Test configuration and fixtures."""
import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from stabkit.cy2.mukai import MukaiLattice
from stabkit.deformation.path import DeformationPath
from stabkit.lattice.charges import CentralCharge
from stabkit.lattice.forms import QuadraticForm
from stabkit.lattice.rational import RationalComplex
from stabkit.quiver.quiver import Quiver, QuiverHeart, projective, simple
from stabkit.utils.config_loader import reset_config

DATA_DIR = Path(__file__).parent.parent / "examples_data"


def rc(re, im) -> RationalComplex:
    return RationalComplex(Fraction(re), Fraction(im))


def charge(*values) -> CentralCharge:
    """Charge from (re, im) pairs, one per basis vector."""
    return CentralCharge.from_values([rc(re, im) for re, im in values])


def random_heart_charge(rng: random.Random, rank: int) -> CentralCharge:
    """Every Z(eᵢ) strictly in the upper half plane, so all nonzero heart classes land in H."""
    values = []
    for _ in range(rank):
        re = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        im = Fraction(rng.randint(1, 6), rng.randint(1, 4))
        values.append(RationalComplex(re, im))
    return CentralCharge.from_values(values)


@pytest.fixture(autouse=True)
def fresh_config(monkeypatch):
    """Each test sees the packaged configuration without environment overrides."""
    monkeypatch.delenv("STABKIT_BUDGET", raising=False)
    reset_config()
    yield
    reset_config()


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def write_doc(tmp_path):
    """Write a JSON document under tmp_path and return its path."""

    def _write(name: str, data) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def a2():
    return Quiver.linear(2)


@pytest.fixture
def a3():
    return Quiver.linear(3)


@pytest.fixture
def kronecker():
    return Quiver.kronecker()


@pytest.fixture
def a2_heart(a2):
    return QuiverHeart(a2, 2)


@pytest.fixture
def p1(a2):
    """P₁ = (𝔽₂ → 𝔽₂, identity)."""
    return projective(a2, 0)


@pytest.fixture
def s1(a2):
    return simple(a2, 0)


@pytest.fixture
def s2(a2):
    return simple(a2, 1)


@pytest.fixture
def semistable_charge():
    """Z(e₁) = −1+i, Z(e₂) = i."""
    return charge((-1, 1), (0, 1))


@pytest.fixture
def unstable_charge():
    """Z(e₁) = −1+i, Z(e₂) = −1+½i."""
    return charge((-1, 1), (-1, Fraction(1, 2)))


@pytest.fixture
def xy_form():
    """Q(x, y) = xy."""
    half = Fraction(1, 2)
    return QuadraticForm(((0, half), (half, 0)))


@pytest.fixture
def a2_path(unstable_charge):
    """Z_t(e₂) = −1+(½+t)i with Z_t(e₁) = −1+i fixed."""
    return DeformationPath(unstable_charge, ((0, 0), (0, 1)))


@pytest.fixture
def hyperbolic():
    """U: pairing 2ab."""
    return MukaiLattice(QuadraticForm(((0, 1), (1, 0))))


@pytest.fixture
def hyperbolic_charge():
    """Z(1, 0) = i, Z(0, 1) = −1."""
    return charge((0, 1), (-1, 0))
