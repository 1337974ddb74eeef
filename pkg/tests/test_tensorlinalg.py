import numpy as np
import pytest

from spsys2d.tensorlinalg import (
    E1,
    E2,
    Subspace,
    annihilator,
    as_cvec,
    factor_rank_one,
    intersect,
    kron,
    normalize_projective,
    projective_cross,
    quad_form_A,
    quad_form_A_bilinear,
    roots_binary_quadratic,
    subspace_sum,
)


def _rng():
    return np.random.default_rng(11)


def _cvec(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


class TestBasics:
    def test_index_convention(self):
        # (i, j) -> 2(i-1) + (j-1): e2 (x) e1 sits at index 2
        v = kron(E2, E1)
        assert np.argmax(np.abs(v)) == 2

    def test_kron_dims_guarded(self):
        with pytest.raises(ValueError):
            kron(np.ones(4), np.ones(4))  # dim 16 unsupported

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            as_cvec([np.nan, 1.0])

    def test_normalize_projective(self):
        v = normalize_projective(np.array([2j, 1.0]))
        assert v[0] == 1.0  # largest magnitude becomes 1
        w = normalize_projective(np.array([1.0, -1.0]))
        assert w[0] == 1.0  # tie broken toward the lower index
        with pytest.raises(ValueError):
            normalize_projective(np.zeros(2))


class TestSubspace:
    def test_from_spanning_truncates_rank(self):
        v = np.array([1.0, 2.0, 3.0, 4.0], dtype=complex)
        s = Subspace.from_spanning(np.column_stack([v, 2 * v]))
        assert s.dim == 1

    def test_contains_and_distance(self):
        rng = _rng()
        s = Subspace.from_spanning(_cvec(rng, 4)[:, None])
        inside = s.basis[:, 0] * (2 - 1j)
        assert s.contains(inside)
        assert s.distance(inside) < 1e-12
        assert s.contains(np.zeros(4))

    def test_equals_is_basis_independent(self):
        rng = _rng()
        a = _cvec(rng, 4)
        b = _cvec(rng, 4)
        s1 = Subspace.from_spanning(np.column_stack([a, b]))
        s2 = Subspace.from_spanning(np.column_stack([a + b, a - 2 * b]))
        assert s1.equals(s2)

    def test_annihilator_involution_and_dimension(self):
        rng = _rng()
        for dim in (1, 2, 3):
            s = Subspace.from_spanning(_cvec(rng, 4).reshape(4, 1) if dim == 1
                                       else _cvec(rng, 4 * dim).reshape(4, dim))
            ann = annihilator(s)
            assert ann.dim == 4 - s.dim
            assert annihilator(ann).equals(s)
            # bilinear pairing vanishes
            assert np.abs(ann.basis.T @ s.basis).max() < 1e-10

    def test_intersection_and_sum(self):
        rng = _rng()
        a, b, c = (_cvec(rng, 4) for _ in range(3))
        s1 = Subspace.from_spanning(np.column_stack([a, b]))
        s2 = Subspace.from_spanning(np.column_stack([a, c]))
        inter = intersect(s1, s2)
        assert inter.dim == 1
        assert inter.contains(a, 1e-8)
        total = subspace_sum(s1, s2)
        assert total.dim == 3


class TestQuadraticForm:
    def test_vanishes_exactly_on_product_vectors(self):
        rng = _rng()
        x, y = _cvec(rng, 2), _cvec(rng, 2)
        assert abs(quad_form_A(kron(x, y))) < 1e-12
        assert abs(quad_form_A(kron(x, y) + kron(y, x))) > 1e-8 or \
            projective_cross(x, y) < 1e-12

    def test_polarization(self):
        rng = _rng()
        u, v = _cvec(rng, 4), _cvec(rng, 4)
        lhs = quad_form_A(u + v) - quad_form_A(u) - quad_form_A(v)
        assert abs(lhs - 2 * quad_form_A_bilinear(u, v)) < 1e-12
        assert abs(quad_form_A_bilinear(u, u) - quad_form_A(u)) < 1e-12


class TestFactorRankOne:
    def test_product_vector_factors(self):
        rng = _rng()
        for _ in range(20):
            x, y = _cvec(rng, 2), _cvec(rng, 2)
            fx, fy = factor_rank_one(kron(x, y))
            assert np.abs(kron(fx, fy) - kron(x, y)).max() < 1e-10

    def test_rank_two_returns_none(self):
        assert factor_rank_one(kron(E1, E1) + kron(E2, E2)) is None

    def test_zero_returns_none(self):
        assert factor_rank_one(np.zeros(4)) is None


class TestQuadraticRoots:
    def test_two_simple_roots(self):
        # (u - v)(u - 2v) = u^2 - 3uv + 2v^2
        roots = roots_binary_quadratic(1, -3, 2)
        assert len(roots.roots) == 2
        for u, v in roots.roots:
            assert abs(u * u - 3 * u * v + 2 * v * v) < 1e-12

    def test_degenerate_leading_coefficient(self):
        roots = roots_binary_quadratic(0, 1, -2)  # v(u - 2v)
        assert len(roots.roots) == 2
        vals = sorted(abs(u / v) if abs(v) > 1e-9 else np.inf
                      for u, v in roots.roots)
        assert vals[0] == pytest.approx(2.0)

    def test_double_root_deduplicated(self):
        roots = roots_binary_quadratic(1, -2, 1)  # (u - v)^2
        assert len(roots.roots) == 1

    def test_identically_zero(self):
        roots = roots_binary_quadratic(0, 0, 0)
        assert roots.identically_zero

    def test_complex_coefficients(self):
        roots = roots_binary_quadratic(1, 0, 1)  # u^2 + v^2
        assert len(roots.roots) == 2
        for u, v in roots.roots:
            assert abs(u * u + v * v) < 1e-12
