import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad

from qgfourier import (
    ClassicalDomainError,
    FourierCoeffs,
    GroupTableError,
    RngSeed,
    character_l1,
    coefficient_bound_check,
    cotype2_ratio,
    cyclic_group,
    ell2_norm,
    evaluate,
    evaluate_su2,
    gaussian_series_l1_mean,
    haar_unitary,
    l1_norm_classical,
    linfty_norm_classical,
    random_coeffs,
    randomized_l1_report,
    su2_irrep_matrix,
    table_from_json,
    table_to_json,
    weyl_character_l1,
)
from qgfourier.classical_eval import FiniteGroupTable, GroupIrrep


def random_su2(rng):
    u = haar_unitary(2, rng)
    return u / np.sqrt(np.linalg.det(u))


class TestFiniteGroups:
    def test_z4_characters(self):
        z4 = cyclic_group(4)
        assert z4.order == 4
        root = np.exp(2j * np.pi / 4)
        for j, ir in enumerate(z4.irreps):
            np.testing.assert_allclose(
                ir.matrices[:, 0, 0], [root ** (j * g) for g in range(4)], atol=1e-14
            )

    def test_trivial_group(self):
        z1 = cyclic_group(1)
        assert z1.order == 1 and len(z1.irreps) == 1

    def test_s3_peter_weyl(self, s3_table):
        assert sum(ir.n**2 for ir in s3_table.irreps) == 6
        assert [ir.n for ir in s3_table.irreps] == [1, 1, 2]

    def test_s3_schur_is_validated_at_construction(self, s3_table):
        # construction already runs the exhaustive orthogonality check; spot-check one entry
        std = s3_table.irrep("std")
        gram = np.mean(std.matrices[:, 0, 0] * np.conj(std.matrices[:, 0, 0]))
        assert gram == pytest.approx(0.5, abs=1e-12)

    def test_rejects_broken_mult_table(self):
        mult = np.array([[0, 1], [1, 1]])  # not a group law
        irreps = (GroupIrrep(0, 1, np.ones((2, 1, 1))),)
        with pytest.raises(GroupTableError):
            FiniteGroupTable(name="bad", order=2, mult=mult, irreps=irreps)

    def test_rejects_wrong_peter_weyl(self):
        z2 = cyclic_group(2)
        with pytest.raises(GroupTableError):
            FiniteGroupTable(
                name="half", order=2, mult=z2.mult, irreps=(z2.irreps[0],)
            )

    def test_json_round_trip(self, s3_table):
        text = table_to_json(s3_table)
        again = table_from_json(text)
        assert again.order == 6
        assert table_to_json(again) == text

    def test_sign_character_values(self):
        z2 = cyclic_group(2)
        f = FourierCoeffs(z2.dual_descriptor(), {1: np.array([[1.0]])})
        assert z2.evaluate(f, 0) == pytest.approx(1.0)
        assert z2.evaluate(f, 1) == pytest.approx(-1.0)
        assert l1_norm_classical(f, z2) == pytest.approx(1.0)
        assert linfty_norm_classical(f, z2) == pytest.approx(1.0)

    def test_constant_function(self, s3_table):
        f = FourierCoeffs(s3_table.dual_descriptor(), {"triv": np.array([[2.0 - 1.0j]])})
        for g in range(6):
            assert evaluate(f, s3_table, g) == pytest.approx(2.0 - 1.0j)
        assert l1_norm_classical(f, s3_table) == pytest.approx(abs(2 - 1j))

    def test_round_trip_extraction(self, s3_table):
        rng = RngSeed(137).generator()
        f = random_coeffs(s3_table.dual_descriptor(), rng)
        back = s3_table.fourier_coeffs(s3_table.coeff_values(f))
        for l in f.labels():
            np.testing.assert_allclose(back.block(l), f.block(l), atol=1e-12)

    def test_holder_chain(self, s3_table):
        rng = RngSeed(139).generator()
        for _ in range(10):
            f = random_coeffs(s3_table.dual_descriptor(), rng)
            l1 = l1_norm_classical(f, s3_table)
            l2 = ell2_norm(f)  # Plancherel: the L2 norm of the function
            linf = linfty_norm_classical(f, s3_table)
            assert l1 <= l2 + 1e-12
            assert l2 <= linf + 1e-12


class TestSU2Irreps:
    def test_level_zero(self):
        g = np.eye(2)
        np.testing.assert_array_equal(su2_irrep_matrix(0, g), np.ones((1, 1)))

    def test_level_one_is_defining(self):
        rng = RngSeed(149).generator()
        g = random_su2(rng)
        np.testing.assert_allclose(su2_irrep_matrix(1, g), g, atol=1e-12)

    def test_diagonal_weights(self):
        theta = 0.37
        g = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        d = su2_irrep_matrix(2, g)
        np.testing.assert_allclose(
            np.diag(d), [np.exp(2j * theta), 1.0, np.exp(-2j * theta)], atol=1e-12
        )
        np.testing.assert_allclose(d - np.diag(np.diag(d)), 0, atol=1e-12)

    @pytest.mark.parametrize("k", [1, 2, 3, 5])
    def test_unitary_and_multiplicative(self, k):
        rng = RngSeed(151, k).generator()
        for _ in range(5):
            g, h = random_su2(rng), random_su2(rng)
            dg, dh = su2_irrep_matrix(k, g), su2_irrep_matrix(k, h)
            assert np.linalg.norm(dg.conj().T @ dg - np.eye(k + 1), 2) <= 1e-10
            np.testing.assert_allclose(dg @ dh, su2_irrep_matrix(k, g @ h), atol=1e-9)

    @pytest.mark.parametrize("k", [1, 2, 4, 6])
    def test_character(self, k):
        theta = 0.61
        g = np.diag([np.exp(1j * theta), np.exp(-1j * theta)])
        chi = np.trace(su2_irrep_matrix(k, g))
        assert chi == pytest.approx(np.sin((k + 1) * theta) / np.sin(theta), abs=1e-9)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            su2_irrep_matrix(2, 2.0 * np.eye(2))  # not unitary
        with pytest.raises(ValueError):
            su2_irrep_matrix(2, np.diag([1j, 1j]))  # det != 1


class TestQuadrature:
    def test_weights_normalized(self, su2_quad):
        assert abs(np.sum(su2_quad.weights) - 1.0) <= 1e-14

    def test_nodes_are_special_unitary(self, su2_quad):
        g = su2_quad.nodes
        prod = np.einsum("gji,gjk->gik", g.conj(), g)
        assert np.max(np.abs(prod - np.eye(2))) <= 1e-12
        assert np.max(np.abs(np.linalg.det(g) - 1.0)) <= 1e-12

    def test_validity_level(self, su2_quad):
        assert su2_quad.kmax_valid >= 6

    def test_nontrivial_character_integrates_to_zero(self, su2_quad):
        tr = np.einsum("gii->g", su2_quad.irrep_stack(1))
        assert abs(np.sum(su2_quad.weights * tr)) <= 1e-10

    def test_schur_orthogonality_to_level_six(self, su2_quad):
        w = su2_quad.weights
        for k in range(7):
            yk = su2_quad.irrep_stack(k).reshape(len(w), -1)
            gram = np.einsum("gi,g,gj->ij", yk.conj(), w, yk)
            np.testing.assert_allclose(gram, np.eye(yk.shape[1]) / (k + 1), atol=1e-8)

    def test_round_trip(self, su2_quad):
        from qgfourier import make_su2_dual

        dual = make_su2_dual(4)
        f = random_coeffs(dual, RngSeed(157).generator())
        back = su2_quad.fourier_coeffs(su2_quad.coeff_values(f), 4, dual)
        for k in range(5):
            np.testing.assert_allclose(back.block(k), f.block(k), atol=1e-8)

    def test_pointwise_evaluation_matches_stack(self, su2_quad):
        from qgfourier import make_su2_dual

        dual = make_su2_dual(3)
        f = random_coeffs(dual, RngSeed(163).generator())
        vals = su2_quad.coeff_values(f)
        for idx in (0, 17, 101):
            assert evaluate_su2(f, su2_quad.nodes[idx]) == pytest.approx(vals[idx], rel=1e-10)

    def test_resolution_precondition(self):
        from qgfourier import make_su2_quadrature

        with pytest.raises(ValueError):
            make_su2_quadrature(3)


class TestCoefficientBounds:
    def test_matrix_unit_upper(self, su2_quad):
        k = 2
        a = np.zeros((3, 3), dtype=complex)
        a[1, 0] = 1.0
        res = coefficient_bound_check(a, k, 1, 2, su2_quad, "upper")
        assert res.bound == pytest.approx(1.0)
        assert res.actual <= 1.0 + 1e-12
        assert res.margin >= -1e-6

    @pytest.mark.parametrize("side", ["upper", "lower"])
    def test_random_instances(self, su2_quad, side):
        rng = RngSeed(167).generator()
        for _ in range(25):
            k = int(rng.integers(1, 5))
            n = k + 1
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            i, j = int(rng.integers(0, n)), int(rng.integers(0, n))
            res = coefficient_bound_check(a, k, i, j, su2_quad, side)
            assert res.margin >= -1e-6

    def test_rejects_unknown_side(self, su2_quad):
        with pytest.raises(ValueError):
            coefficient_bound_check(np.eye(2), 1, 0, 0, su2_quad, "sideways")


class TestCharacterL1:
    def test_level_zero(self, su2_quad):
        assert character_l1(0, su2_quad) == pytest.approx(1.0, abs=1e-10)

    def test_level_one_regression_value(self):
        # frozen from the one-dimensional oracle: (2/pi) * 4/3
        assert weyl_character_l1(1) == pytest.approx(8.0 / (3.0 * np.pi), abs=1e-14)

    def test_euler_route_agrees_with_weyl_route(self, su2_quad):
        # |tr| has kinks, so the product rule is a few 1e-3 off the exact value
        for k in range(su2_quad.kmax_valid + 1):
            assert character_l1(k, su2_quad) == pytest.approx(weyl_character_l1(k), abs=2e-2)

    @pytest.mark.parametrize("k", [1, 3, 10, 57])
    def test_weyl_route_against_adaptive_quadrature(self, k):
        integrand = lambda t: abs(np.sin((k + 1) * t) * np.sin(t))
        total = 0.0
        cuts = np.linspace(0.0, np.pi, k + 2)
        for a, b in zip(cuts[:-1], cuts[1:]):
            total += scipy_quad(integrand, a, b, limit=200)[0]
        assert weyl_character_l1(k) == pytest.approx((2.0 / np.pi) * total, abs=1e-10)

    def test_large_level_limit(self):
        assert weyl_character_l1(200) == pytest.approx(8.0 / np.pi**2, abs=0.01)

    def test_floor_through_200(self):
        assert min(weyl_character_l1(k) for k in range(201)) >= 0.5


class TestGaussianSeriesL1:
    def test_singleton_half_normal(self):
        z1 = cyclic_group(1)
        f = FourierCoeffs(z1.dual_descriptor(), {0: np.array([[1.7]])})
        res = gaussian_series_l1_mean(f, 20_000, RngSeed(173), z1)
        assert res.predicted == pytest.approx(np.sqrt(2 / np.pi) * 1.7, rel=1e-12)
        assert abs(res.mean - res.predicted) <= 3 * res.stderr

    def test_real_family_on_s3(self, s3_table):
        f = random_coeffs(s3_table.dual_descriptor(), RngSeed(179).generator(), real=True)
        res = gaussian_series_l1_mean(f, 10_000, RngSeed(181), s3_table)
        assert abs(res.mean - res.predicted) <= 3 * res.stderr

    def test_zero_family(self, s3_table):
        f = FourierCoeffs(s3_table.dual_descriptor(), {})
        res = gaussian_series_l1_mean(f, 10, RngSeed(191), s3_table)
        assert res.mean == 0.0 and res.predicted == 0.0

    def test_complex_corpus_respects_lower_bound(self, z8_table):
        # for general complex coefficients only the one-sided bound holds:
        # mean >= sqrt(2/pi) * coefficient energy root (up to MC error)
        f = random_coeffs(z8_table.dual_descriptor(), RngSeed(193).generator(), labels=[1, 3, 5])
        res = gaussian_series_l1_mean(f, 10_000, RngSeed(197), z8_table)
        assert res.mean + 3 * res.stderr >= res.predicted


class TestCotype:
    def test_singleton_ratio(self, s3_table):
        xs = [random_coeffs(s3_table.dual_descriptor(), RngSeed(199).generator())]
        res = cotype2_ratio(s3_table, xs, 20_000, RngSeed(211))
        assert abs(res.ratio - np.sqrt(2 / np.pi)) <= 3 * res.stderr

    def test_z8_characters(self, z8_table):
        xs = [
            FourierCoeffs(z8_table.dual_descriptor(), {j: np.array([[1.0]])})
            for j in range(8)
        ]
        res = cotype2_ratio(z8_table, xs, 5000, RngSeed(223))
        assert res.ratio >= 0.2

    def test_rejects_empty_and_zero(self, s3_table):
        with pytest.raises(ValueError):
            cotype2_ratio(s3_table, [], 100, RngSeed(227))
        zero = FourierCoeffs(s3_table.dual_descriptor(), {})
        with pytest.raises(ValueError):
            cotype2_ratio(s3_table, [zero, zero], 100, RngSeed(229))


class TestRandomizedL1Report:
    def test_trivial_coefficient(self, s3_table):
        f = FourierCoeffs(s3_table.dual_descriptor(), {"triv": np.array([[2.0]])})
        res = randomized_l1_report(s3_table, f, 200, RngSeed(233))
        assert res.sup_l1_over_u == pytest.approx(2.0, abs=1e-12)
        assert res.ell2 == pytest.approx(2.0)
        assert res.ratio == pytest.approx(1.0, abs=1e-12)

    def test_sign_character_is_phase_invariant(self):
        z2 = cyclic_group(2)
        f = FourierCoeffs(z2.dual_descriptor(), {1: np.array([[1.0]])})
        res = randomized_l1_report(z2, f, 500, RngSeed(239))
        assert res.sup_l1_over_u == pytest.approx(1.0, abs=1e-12)
        assert res.ell2 == pytest.approx(1.0)

    def test_stability_under_more_unitaries(self, s3_table):
        f = random_coeffs(s3_table.dual_descriptor(), RngSeed(241).generator())
        r1 = randomized_l1_report(s3_table, f, 1000, RngSeed(251))
        r2 = randomized_l1_report(s3_table, f, 10_000, RngSeed(251))
        assert abs(r1.ratio - r2.ratio) <= 0.1 * r2.ratio
        assert r2.sup_l1_over_u >= r1.sup_l1_over_u  # nested seeds: sup is monotone


def test_evaluate_dispatch_rejects_unknown(s3_table):
    f = FourierCoeffs(s3_table.dual_descriptor(), {})
    with pytest.raises(ClassicalDomainError):
        evaluate(f, object(), 0)
