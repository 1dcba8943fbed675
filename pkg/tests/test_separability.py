import numpy as np
import pytest

from gaussent import (
    ComplexEigenvalueError,
    GaussianState,
    MeasurementSpec,
    NotBisymmetricError,
    classify_three_mode,
    condition_on_measurement,
    embed_vacuum,
    final_cm,
    initial_cm,
    localizable_mu,
    log_negativity,
    measurement_scan_oracle,
    mu_m,
    reduce_modes,
    shared_cm,
    splitting_sigma,
    threshold_r_e,
    threshold_r_m,
    two_mode_metrics,
)
from gaussent.protocol import ROUTE_VIA_A, ROUTE_VIA_APRIME, ProtocolParams
from gaussent.separability import PAIR_LABELS, SPLITTING_LABELS

from helpers import pt_mu_oracle, random_physical_cm


def sigma_closed_form(r, eps):
    return 8 * np.exp(eps - r) * np.sinh(eps - r) * np.sinh(r) ** 2


def tmsv_cm(r):
    ch, sh = np.cosh(2 * r), np.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    return np.block([[ch * np.eye(2), sh * z], [sh * z, ch * np.eye(2)]])


# symmetric 4x4 with delta_tilde^2 - 4 det < 0 (no real PT symplectic
# spectrum); found by random search, frozen here
INDEFINITE_CM = np.array([
    [0.125730221093393, -0.333887118226206, -0.031656292681855, -1.110065328742897],
    [-0.333887118226206, 0.361595054909485, 0.019289287042042, 0.364144649598348],
    [-0.031656292681855, 0.019289287042042, -0.623274462537352, -0.602292483952911],
    [-1.110065328742897, 0.364144649598348, -0.602292483952911, -0.732267354703452],
])


class TestSplittingSigma:
    def test_matches_closed_form_on_grid(self):
        grid = np.linspace(0, 1, 12)
        for r in grid:
            for eps in grid:
                state, _ = shared_cm(ProtocolParams(r, eps))
                sigma = splitting_sigma(state.cm, 0).sigma
                assert abs(sigma - sigma_closed_form(r, eps)) < 1e-9

    def test_bisymmetry_of_shared_state(self):
        for r, eps in [(0.3, 0.1), (0.7, 0.4), (1.0, 0.0)]:
            state, _ = shared_cm(ProtocolParams(r, eps))
            s_a = splitting_sigma(state.cm, 0).sigma
            s_ap = splitting_sigma(state.cm, 1).sigma
            assert abs(s_a - s_ap) < 1e-10

    def test_equal_noise_and_squeezing_is_boundary(self):
        state, _ = shared_cm(ProtocolParams(0.3, 0.3))
        verdict = splitting_sigma(state.cm, 0)
        assert verdict.boundary
        assert not verdict.entangled

    def test_mode_b_never_entangled(self):
        for r in np.linspace(0, 1, 9):
            for eps in np.linspace(0, 1, 9):
                state, _ = shared_cm(ProtocolParams(r, eps))
                assert not splitting_sigma(state.cm, 2).entangled

    def test_labels(self):
        state, _ = shared_cm(ProtocolParams(0.3, 0.1))
        assert [splitting_sigma(state.cm, m).splitting for m in range(3)] == list(SPLITTING_LABELS)


class TestFinalStateSigmas:
    def test_quarter_identity_on_grid(self):
        # the final-stage sigma of the non-participating mode is a quarter of
        # the shared-stage value, for both routes
        grid = np.linspace(0, 1, 8)
        for r in grid:
            for eps in grid:
                params = ProtocolParams(r, eps)
                shared, _ = shared_cm(params)
                s_a = splitting_sigma(shared.cm, 0).sigma
                tilde = splitting_sigma(final_cm(params, ROUTE_VIA_APRIME).cm, 1).sigma
                tildetilde = splitting_sigma(final_cm(params, ROUTE_VIA_A).cm, 0).sigma
                assert abs(tilde - s_a / 4) < 1e-9
                assert abs(tildetilde - s_a / 4) < 1e-9


class TestTwoModeMetrics:
    def test_vacuum_is_boundary(self):
        m = two_mode_metrics(np.eye(4))
        assert m.mu == pytest.approx(1.0, abs=1e-12)
        assert not m.entangled
        assert m.boundary

    def test_two_mode_squeezed_vacuum(self):
        m = two_mode_metrics(tmsv_cm(0.5))
        assert m.mu == pytest.approx(pt_mu_oracle(tmsv_cm(0.5)), abs=1e-10)
        assert m.mu == pytest.approx(np.exp(-1), abs=1e-12)
        assert m.log_negativity == pytest.approx(np.log2(np.e), abs=1e-10)

    def test_boundary_at_pair_threshold(self):
        from gaussent import reduced_pair_cm

        mu = two_mode_metrics(reduced_pair_cm(ProtocolParams(threshold_r_e(0.1), 0.1))).mu
        assert mu == pytest.approx(1.0, abs=1e-6)

    def test_verdict_matches_determinant_form(self):
        rng = np.random.default_rng(31)
        cms = [random_physical_cm(2, rng) for _ in range(200)]
        cms += [tmsv_cm(r) for r in (0.1, 0.5, 1.0)]
        from gaussent import reduced_pair_cm

        cms += [reduced_pair_cm(ProtocolParams(r, 0.1)) for r in np.linspace(0, 1, 15)]
        for cm in cms:
            m = two_mode_metrics(cm)
            if abs(m.mu - 1) > 1e-9:
                assert np.sign(m.ppt_condition_value) == np.sign(m.mu - 1)

    def test_mu_against_oracle_on_randoms(self):
        rng = np.random.default_rng(32)
        for _ in range(100):
            cm = random_physical_cm(2, rng)
            assert two_mode_metrics(cm).mu == pytest.approx(pt_mu_oracle(cm), abs=1e-8)

    def test_unphysical_input_raises(self):
        with pytest.raises(ComplexEigenvalueError):
            two_mode_metrics(INDEFINITE_CM)


class TestLogNegativity:
    @pytest.mark.parametrize(
        "mu,expected",
        [(1.0, 0.0), (0.5, 1.0), (np.exp(-1), 1.4426950408889634), (2.0, 0.0)],
    )
    def test_values(self, mu, expected):
        assert log_negativity(mu) == pytest.approx(expected, abs=1e-12)

    def test_negative_mu_rejected(self):
        with pytest.raises(ValueError):
            log_negativity(-0.1)


class TestClassifyThreeMode:
    def test_triple_vacuum(self):
        report = classify_three_mode(np.eye(6))
        assert report.class_label == "ppt-all-splittings"
        assert report.separable_splitting is None

    def test_shared_state_is_one_mode_biseparable(self):
        state, _ = shared_cm(ProtocolParams(0.3, 0.1))
        report = classify_three_mode(state.cm)
        assert report.class_label == "one-mode-biseparable"
        assert report.separable_splitting == "B|(AA')"
        assert all(m.mu >= 1 - 1e-9 for _, m in report.pairwise)
        assert [label for label, _ in report.pairwise] == list(PAIR_LABELS)

    @pytest.mark.parametrize("route", [ROUTE_VIA_APRIME, ROUTE_VIA_A])
    def test_final_state_is_fully_inseparable(self, route):
        report = classify_three_mode(final_cm(ProtocolParams(0.3, 0.1), route).cm)
        assert report.class_label == "fully-inseparable"

    def test_json_shape(self):
        state, _ = shared_cm(ProtocolParams(0.3, 0.1))
        payload = classify_three_mode(state.cm).to_json_dict()
        assert set(payload) == {"verdicts", "pairwise", "class", "separable_splitting"}
        assert len(payload["verdicts"]) == 3
        assert len(payload["pairwise"]) == 3


class TestLocalizableMu:
    def test_matches_piecewise_closed_form(self):
        state, _ = shared_cm(ProtocolParams(0.4, 0.1))
        mu = localizable_mu(state.cm, 2)
        assert mu == pytest.approx(mu_m(ProtocolParams(0.4, 0.1)), abs=1e-9)

    def test_boundary_at_measurement_threshold(self):
        for eps in (0.1, 0.5):
            state, _ = shared_cm(ProtocolParams(threshold_r_m(eps), eps))
            assert localizable_mu(state.cm, 2) == pytest.approx(1.0, abs=1e-6)

    def test_bisymmetric_product_cannot_be_entangled_by_conditioning(self):
        cm = np.eye(6)
        cm[4:, 4:] = np.diag([1.5, 2.0])  # vacuum x vacuum x noisy mode
        assert localizable_mu(cm, 2) >= 1 - 1e-12

    def test_non_bisymmetric_input_rejected(self):
        embedded = embed_vacuum(initial_cm(ProtocolParams(0.3, 0.1)), 1)
        with pytest.raises(NotBisymmetricError):
            localizable_mu(embedded.cm, 2)
        with pytest.raises(NotBisymmetricError):
            localizable_mu(final_cm(ProtocolParams(0.3, 0.1)).cm, 0)


class TestMeasurementScanOracle:
    def test_never_beats_homodyne_route_and_gets_close(self):
        state, _ = shared_cm(ProtocolParams(0.4, 0.1))
        best = measurement_scan_oracle(state.cm, 2)
        target = localizable_mu(state.cm, 2)
        assert best >= target - 1e-4
        assert abs(best - target) < 1e-4

    def test_minimum_attained_at_x_homodyne_corner(self):
        # under the seed convention diag(t, 1/t), homodyne-x is theta = 0,
        # t -> 0; scan the grid by hand and locate the argmin
        state, _ = shared_cm(ProtocolParams(0.4, 0.1))
        best, arg = np.inf, None
        for theta in np.linspace(0, np.pi, 16, endpoint=False):
            rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
            for t in np.logspace(-6, 6, 17):
                seed = rot @ np.diag([t, 1 / t]) @ rot.T
                spec = MeasurementSpec.general_gaussian(2, seed)
                mu = two_mode_metrics(condition_on_measurement(GaussianState(state.cm), spec).cm).mu
                if mu < best:
                    best, arg = mu, (theta, t)
        assert arg[0] == 0.0
        assert arg[1] == pytest.approx(1e-6)

    def test_product_state_minimum_at_least_one(self):
        embedded = embed_vacuum(initial_cm(ProtocolParams(0.3, 0.1)), 1)
        assert measurement_scan_oracle(embedded.cm, 2, n_theta=12, n_t=13) >= 1 - 1e-12

    def test_grid_refinement_never_raises_minimum(self):
        state, _ = shared_cm(ProtocolParams(0.35, 0.1))
        coarse = measurement_scan_oracle(state.cm, 2, n_theta=12, n_t=13)
        fine = measurement_scan_oracle(state.cm, 2, n_theta=24, n_t=25)
        assert fine <= coarse + 1e-15


class TestPairwiseOfShared:
    def test_reduced_pairs_of_shared_state_are_separable(self):
        state, _ = shared_cm(ProtocolParams(0.3, 0.1))
        for modes in ((0, 1), (0, 2), (1, 2)):
            assert two_mode_metrics(reduce_modes(state.cm, modes)).mu >= 1 - 1e-9
