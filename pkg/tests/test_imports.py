"""Test module imports."""


def test_import_main_package():
    """Test importing main package."""
    import stabkit
    assert hasattr(stabkit, '__version__')


def test_import_lattice():
    """Test importing the exact lattice layer."""
    from stabkit.lattice import charges, forms, gl2, linalg, normalize, phase, rational, shortvec


def test_import_quiver_and_hn():
    """Test importing quiver backend and HN polygons."""
    from stabkit.quiver import quiver, subobjects, subspaces
    from stabkit.hn import filtration, polygon


def test_import_slicing_and_deformation():
    """Test importing slicings and deformations."""
    from stabkit.slicing import distance, prestability
    from stabkit.deformation import direction, jordan_holder, lift, path, poly, walls


def test_import_reductions_and_cy2():
    """Test importing form extensions and 2-CY certificates."""
    from stabkit.reductions import extension
    from stabkit.cy2 import mukai


def test_import_workflows():
    """Test importing workflows."""
    from stabkit.workflows import commands, models, runner


def test_import_utils():
    """Test importing utilities."""
    from stabkit.utils import codec, config_loader, file_utils
    from stabkit.render import svg
    from stabkit import schemas


def test_import_cli():
    """Test importing CLI."""
    from stabkit.cli import main
