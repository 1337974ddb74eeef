import numpy as np
import pytest

from spsys2d.classify import (
    ChainUnclassifiedError,
    NotSubproductTripleError,
    Triple,
    TripleClass,
    canonical_triple,
    chain_normal_form,
    classify_triple,
    plane_normal_form,
    product_in_intersection,
    rank_of_plane,
)
from spsys2d.tensorlinalg import E1, E2, Subspace, kron, projective_cross


def _rng(seed=0):
    return np.random.default_rng(seed)


def _random_gl2(rng, max_cond=50.0):
    while True:
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        if np.linalg.cond(g) <= max_cond:
            return g


def _span(*vectors):
    return Subspace.from_spanning(np.column_stack(vectors))


class TestPlaneRank:
    def test_rank_two_plane(self):
        p = _span(kron(E1, E1), kron(E2, E2))
        assert rank_of_plane(p) == 2

    def test_rank_one_plane(self):
        p = _span(kron(E1, E1), kron(E2, E1) + 3 * kron(E1, E2))
        assert rank_of_plane(p) == 1

    def test_rank_zero_planes(self):
        left = _span(kron(E1, E1), kron(E2, E1))
        right = _span(kron(E1, E1), kron(E1, E2))
        assert rank_of_plane(left) == 0
        assert rank_of_plane(right) == 0

    def test_rank_invariant_under_factor_maps(self):
        rng = _rng(5)
        for _ in range(10):
            g1, g2 = _random_gl2(rng), _random_gl2(rng)
            big = np.kron(g1, g2)
            for plane, want in [
                (_span(kron(E1, E1), kron(E2, E2)), 2),
                (_span(kron(E1, E1), kron(E2, E1) + kron(E1, E2)), 1),
                (_span(kron(E1, E1), kron(E1, E2)), 0),
            ]:
                assert rank_of_plane(plane.map_by(big)) == want


class TestPlaneNormalForm:
    def test_rank_two_recovers_product_directions(self):
        p = _span(kron(E1, E1), kron(E2, E2))
        nf = plane_normal_form(p)
        assert nf.rank == 2
        for x, y in zip(nf.basis1, nf.basis2):
            assert p.contains(kron(x, y), 1e-8)

    def test_rank_one_normal_form(self):
        p = _span(kron(E1, E1), kron(E2, E1) + 3 * kron(E1, E2))
        nf = plane_normal_form(p)
        assert nf.rank == 1
        x1, y1 = nf.basis1
        x2, y2 = nf.basis2
        assert p.contains(kron(x1, x2), 1e-8)
        assert p.contains(kron(x1, y2) + kron(y1, x2), 1e-8)

    def test_rank_zero_tags(self):
        assert plane_normal_form(_span(kron(E1, E1), kron(E2, E1))).case_tag == "left"
        assert plane_normal_form(_span(kron(E1, E1), kron(E1, E2))).case_tag == "right"


class TestProductInIntersection:
    def test_diagonal_plane_with_itself(self):
        p = _span(kron(E1, E1), kron(E2, E2))
        x1, x2, x3 = product_in_intersection(p, p)
        assert p.contains(kron(x1, x2), 1e-8)
        assert p.contains(kron(x2, x3), 1e-8)

    def test_returns_none_when_intersection_trivial(self):
        rng = _rng(9)
        p = _span(kron(E1, E1), kron(E2, E2))
        found_none = False
        for _ in range(10):
            q = Subspace.from_spanning(
                rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
            )
            if product_in_intersection(p, q) is None:
                found_none = True
        assert found_none

    def test_forced_intersection_500_instances(self):
        rng = _rng(100)
        for _ in range(100):
            # force a common product vector x1 (x) x2, x2 (x) x3
            x1, x2, x3 = (rng.standard_normal(2) + 1j * rng.standard_normal(2)
                          for _ in range(3))
            other12 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            other23 = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            L12 = _span(kron(x1, x2), other12)
            L23 = _span(kron(x2, x3), other23)
            got = product_in_intersection(L12, L23)
            assert got is not None
            g1, g2, g3 = got
            assert L12.distance(kron(g1, g2)) <= 1e-8
            assert L23.distance(kron(g2, g3)) <= 1e-8


class TestCanonicalTriples:
    @pytest.mark.parametrize("label", ["C1", "C2", "C4", "C5"])
    def test_fixed_point_classification(self, label):
        cls, iso = classify_triple(canonical_triple(TripleClass(label)))
        assert cls.label == label
        assert cls.lam is None

    @pytest.mark.parametrize("lam", [2.0, -1.0, 0.5j, 1.7 - 0.3j, 1.0])
    def test_c3_lambda_recovery(self, lam):
        cls, iso = classify_triple(canonical_triple(TripleClass("C3", lam)))
        assert cls.label == "C3"
        assert abs(cls.lam - lam) <= 1e-9 * abs(lam)

    def test_lambda_is_an_exact_invariant(self):
        # lambda and 1/lambda are distinct classes
        cls, _ = classify_triple(canonical_triple(TripleClass("C3", 2.0)))
        assert abs(cls.lam - 2.0) < 1e-9
        cls2, _ = classify_triple(canonical_triple(TripleClass("C3", 0.5)))
        assert abs(cls2.lam - 0.5) < 1e-9

    def test_class_constructor_guards(self):
        with pytest.raises(ValueError):
            TripleClass("C3")  # missing lambda
        with pytest.raises(ValueError):
            TripleClass("C3", 0)
        with pytest.raises(ValueError):
            TripleClass("C1", 2.0)
        with pytest.raises(ValueError):
            TripleClass("C9")


class TestClassifyConjugated:
    @pytest.mark.parametrize("label,lam", [
        ("C1", None), ("C2", None), ("C3", 2.0), ("C3", 1 + 1j),
        ("C4", None), ("C5", None),
    ])
    def test_round_trip_under_random_conjugation(self, label, lam):
        rng = _rng(hash((label, str(lam))) % 2**31)
        base = canonical_triple(TripleClass(label, lam))
        for _ in range(10):
            g = _random_gl2(rng)
            g2 = np.kron(g, g)
            g3 = np.kron(g2, g)
            t = Triple(E2=base.E2.map_by(g2), E3=base.E3.map_by(g3))
            cls, iso = classify_triple(t)
            assert cls.label == label
            if lam is not None:
                assert abs(cls.lam - lam) <= 1e-8 * abs(lam)
            # the returned map really carries the input onto the canonical form
            assert iso.apply2(t.E2).equals(base.E2, 1e-7)
            assert iso.apply3(t.E3).equals(base.E3, 1e-7)

    def test_distinctness_of_families(self):
        # Classifying each canonical triple never yields another label
        labels = [("C1", None), ("C2", None), ("C3", 2.0), ("C3", 0.5),
                  ("C3", 1j), ("C4", None), ("C5", None)]
        seen = []
        for label, lam in labels:
            cls, _ = classify_triple(canonical_triple(TripleClass(label, lam)))
            seen.append((cls.label, None if cls.lam is None
                         else complex(round(cls.lam.real, 6),
                                      round(cls.lam.imag, 6))))
        assert len(set(seen)) == len(labels)

    def test_inconsistent_e3_rejected(self):
        # E2 of class C1 with an E3 that does not match the normal form
        base = canonical_triple(TripleClass("C1"))
        bad_e3 = _span(kron(kron(E1, E1), E1), kron(kron(E2, E2), E1))
        with pytest.raises(NotSubproductTripleError):
            classify_triple(Triple(E2=base.E2, E3=bad_e3))

    def test_e3_outside_window_rejected(self):
        base = canonical_triple(TripleClass("C1"))
        bad = _span(kron(kron(E1, E2), E1), kron(kron(E2, E1), E2))
        with pytest.raises(NotSubproductTripleError):
            Triple(E2=base.E2, E3=bad).validate()


class TestChainNormalForm:
    def test_rank_two_chain(self):
        rng = _rng(21)
        g1, g2, g3 = (_random_gl2(rng) for _ in range(3))
        L12 = _span(kron(E1, E1), kron(E2, E2)).map_by(np.kron(g1, g2))
        L23 = _span(kron(E1, E1), kron(E2, E2)).map_by(np.kron(g2, g3))
        L123 = _span(
            kron(kron(E1, E1), E1), kron(kron(E2, E2), E2)
        ).map_by(np.kron(np.kron(g1, g2), g3))
        nf = chain_normal_form(L12, L23, L123)
        assert nf.rank12 == 2
        assert nf.residual < 1e-8
        for v in nf.span_vectors:
            assert L123.distance(v) < 1e-8

    def test_rank_one_chain(self):
        rng = _rng(22)
        g1, g2, g3 = (_random_gl2(rng) for _ in range(3))
        L12 = _span(kron(E1, E1), kron(E2, E1) + kron(E1, E2)).map_by(np.kron(g1, g2))
        L23 = _span(kron(E1, E1), kron(E2, E1) + kron(E1, E2)).map_by(np.kron(g2, g3))
        L123 = _span(
            kron(kron(E1, E1), E1),
            kron(kron(E2, E1), E1) + kron(kron(E1, E2), E1) + kron(kron(E1, E1), E2),
        ).map_by(np.kron(np.kron(g1, g2), g3))
        nf = chain_normal_form(L12, L23, L123)
        assert nf.rank12 == 1
        assert nf.residual < 1e-8

    def test_rank_zero_chain_unclassified(self):
        L12 = _span(kron(E1, E1), kron(E1, E2))
        L123 = _span(kron(kron(E1, E1), E1), kron(kron(E1, E1), E2))
        with pytest.raises(ChainUnclassifiedError):
            chain_normal_form(L12, L12, L123)
