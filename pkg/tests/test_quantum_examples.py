import numpy as np
import pytest

from qgfourier import (
    FourierCoeffs,
    RngSeed,
    ell2_norm,
    growth_report,
    make_onplus_dual,
    make_su2_dual,
    make_suq2_dual,
    make_trivial_dual,
    nonkac_quantity,
    random_coeffs,
    suq2_chain_check,
)

SUQ2 = make_suq2_dual(0.5, 4)


class TestNonkacQuantity:
    def test_trivial(self):
        f = FourierCoeffs(make_trivial_dual(), {0: np.array([[2.0 - 1.0j]])})
        assert nonkac_quantity(f) == pytest.approx(abs(2 - 1j) ** 2)

    def test_kac_one_dimensional_blocks_equal_squared_ell2(self):
        # with d = n and Q = I the quantity is sum tr(f^* f); it matches the
        # squared ell2 norm exactly when every supported block has n = 1
        from qgfourier import cyclic_group

        dual = cyclic_group(8).dual_descriptor()
        rng = RngSeed(257).generator()
        for _ in range(10):
            f = random_coeffs(dual, rng)
            assert nonkac_quantity(f) == pytest.approx(ell2_norm(f) ** 2, rel=1e-12)

    def test_kac_general_blocks_are_dominated(self):
        dual = make_su2_dual(4)
        rng = RngSeed(258).generator()
        for _ in range(10):
            f = random_coeffs(dual, rng)
            assert nonkac_quantity(f) <= ell2_norm(f) ** 2 * (1.0 + 1e-12)

    def test_deformed_identity_block(self):
        f = FourierCoeffs(SUQ2, {1: np.eye(2)})
        assert nonkac_quantity(f) == pytest.approx((2.5 / 2.0) * 2.5, rel=1e-14)


class TestChainCheck:
    def test_trivial_block_only(self):
        f = FourierCoeffs(make_suq2_dual(0.5, 1), {0: np.array([[1.0]])})
        res = suq2_chain_check(0.5, 0.5, f)
        assert res.lhs == pytest.approx(1.0)
        assert res.rhs == pytest.approx(1.0 / (1.0 - 0.5**0.5) ** 2)
        assert res.lhs <= res.rhs
        assert res.termwise_ok

    @pytest.mark.parametrize("q,eps", [(0.5, 0.5), (0.9, 0.1), (0.3, 1.0)])
    def test_random_families_long_truncation(self, q, eps):
        dual = make_suq2_dual(q, 60)
        rng = RngSeed(263).generator()
        for _ in range(5):
            f = random_coeffs(dual, rng)
            res = suq2_chain_check(q, eps, f)
            assert res.lhs <= res.rhs * (1.0 + 1e-12)
            assert res.termwise_ok

    def test_domain_errors(self):
        f = FourierCoeffs(SUQ2, {0: np.array([[1.0]])})
        with pytest.raises(ValueError):
            suq2_chain_check(1.5, 0.5, f)
        with pytest.raises(ValueError):
            suq2_chain_check(0.5, 0.0, f)

    def test_overflow_guard(self):
        dual = make_suq2_dual(0.1, 300)
        f = FourierCoeffs(dual, {300: np.eye(301)})
        with pytest.raises(OverflowError):
            suq2_chain_check(0.1, 1e-6, f)


class TestGrowthReport:
    def test_su2_ratios_are_one(self):
        rows = growth_report(make_su2_dual(6))
        assert all(r.ratio == 1.0 for r in rows)
        assert [r.n for r in rows] == list(range(1, 8))

    def test_deformed_growth_bound(self):
        rows = growth_report(make_suq2_dual(0.5, 40), q=0.5)
        for r in rows:
            assert r.d >= 2.0**r.k  # q^{-k} at q = 1/2

    def test_onplus_dimensions_increase(self):
        rows = growth_report(make_onplus_dual(3, 8))
        dims = [r.n for r in rows]
        assert all(a < b for a, b in zip(dims, dims[1:]))

    def test_bad_q(self):
        with pytest.raises(ValueError):
            growth_report(SUQ2, q=1.5)
