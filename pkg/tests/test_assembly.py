import numpy as np
import pytest

from steklov.assembly import (
    QuadratureRule,
    assemble,
    boundary_mass_analytic,
    read_matrix,
    weighted_mass,
    write_matrix,
)
from steklov.diskbasis import build_basis, eval_basis_set
from steklov.errors import ConfigError
from steklov.harness import standard_media
from steklov.medium import Constant, DiskInclusion


@pytest.fixture(scope="module")
def basis():
    return build_basis(4, 5)


def test_constant_medium_diagonal(basis):
    sys = assemble(basis, Constant(2.0), 1.0)
    np.testing.assert_allclose(np.diag(sys.A), basis.sigmas - 2.0, atol=1e-9)
    off = sys.A - np.diag(np.diag(sys.A))
    assert np.max(np.abs(off)) <= 1e-9
    assert np.max(np.abs(sys.A.imag)) == 0.0


def test_single_mode_pencil():
    b = build_basis(0, 1, truncation=1)
    sys = assemble(b, Constant(2.0), 1.0)
    assert sys.A[0, 0] == pytest.approx(-2.0, abs=1e-13)
    assert sys.B[0, 0] == pytest.approx(2.0, abs=1e-15)


def test_matches_refined_quadrature(basis):
    m = DiskInclusion(0.5, 2.0, 1.0)
    A = assemble(basis, m, 1.0).A
    ref = assemble(basis, m, 1.0, QuadratureRule(640, 512)).A
    assert np.max(np.abs(A - ref)) <= 1e-10


@pytest.mark.parametrize("name", list(standard_media()))
def test_doubling_nodes_converged(basis, name):
    m = standard_media()[name]
    rule = QuadratureRule()
    A = assemble(basis, m, 1.0, rule).A
    A2 = assemble(basis, m, 1.0, rule.refined(2)).A
    assert np.max(np.abs(A - A2)) <= 1e-10


def test_symmetry(basis):
    for m in standard_media().values():
        sys = assemble(basis, m, 1.0)
        assert np.array_equal(sys.A, sys.A.T)
        assert np.array_equal(sys.B, sys.B.T)


@pytest.mark.parametrize("include_sin,rank", [(False, 5), (True, 9)])
def test_boundary_mass_rank(include_sin, rank):
    b = build_basis(4, 5, include_sin=include_sin)
    B = boundary_mass_analytic(b)
    s = np.linalg.svd(B, compute_uv=False)
    assert np.sum(s > 1e-12 * s.max()) == rank
    assert np.all(np.linalg.eigvalsh(B) >= -1e-12)


def test_boundary_mass_entries(basis):
    B = boundary_mass_analytic(basis)
    idx = {(f.p, f.q): i for i, f in enumerate(basis)}
    assert B[idx[0, 1], idx[0, 1]] == pytest.approx(2.0)
    assert B[idx[0, 1], idx[1, 1]] == 0.0


@pytest.mark.parametrize("include_sin", [False, True])
def test_boundary_mass_quadrature_oracle(include_sin):
    b = build_basis(4, 5, include_sin=include_sin)
    t = 2 * np.pi * np.arange(512) / 512
    phi = eval_basis_set(b, np.ones_like(t), t)
    ref = phi @ phi.T * (2 * np.pi / 512)
    assert np.max(np.abs(boundary_mass_analytic(b) - ref)) <= 1e-12


def test_deterministic(basis):
    m = standard_media()["pear"]
    a = weighted_mass(basis, m, QuadratureRule())
    b = weighted_mass(basis, m, QuadratureRule())
    assert a.tobytes() == b.tobytes()


def test_tensor_gauss_rule():
    rule = QuadratureRule.tensor_gauss(12)
    assert rule.angular_rule == "gauss" and not rule.split_at_interface
    with pytest.raises(ConfigError):
        QuadratureRule(8, 256)
    with pytest.raises(ConfigError):
        QuadratureRule(64, 256, angular_rule="simpson")


def test_errors(basis):
    with pytest.raises(ConfigError):
        assemble(basis, Constant(2.0), 0.0)


def test_matrix_text_round_trip(tmp_path, basis):
    sys = assemble(basis, standard_media()["constant_2+i"], 1.0)
    path = tmp_path / "A.txt"
    write_matrix(path, sys.A)
    assert np.array_equal(read_matrix(path), sys.A)
    first = path.read_text().splitlines()[0].split()[0]
    assert first.endswith("i") and "+" in first[1:] or "-" in first[1:]
