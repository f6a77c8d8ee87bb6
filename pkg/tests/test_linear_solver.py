import math

import numpy as np
import pytest

from models.errors import DomainError, HypothesisViolationError, PositivityRequiredError
from models.profiles import RadialDensity
from solvers.kernel_solver import KernelSolver
from solvers.linear_solver import LinearSolver, certify_radial_positivity, positivity_threshold
from utils.grid_utils import log_grid

PAIRS = [(1, 0.25), (1, 0.5), (2, 0.5), (2, 1.0), (3, 1.0), (3, 2.0), (4, 1.5), (4, 2.5), (5, 3.0)]


def test_thresholds():
    assert positivity_threshold(1) == 7.0 / 16.0
    assert positivity_threshold(2) == 0.5
    assert positivity_threshold(3) == 2.0
    assert positivity_threshold(6) == 3.5


@pytest.mark.parametrize("N,beta", PAIRS)
def test_gamma_product_identity(N, beta):
    solver = LinearSolver(N, beta)
    assert solver.c * solver.closed_form_A() == pytest.approx(1.0, abs=1e-12)


def test_closed_form_constants():
    solver = LinearSolver(3, 1.0)
    assert solver.closed_form_A() == pytest.approx(math.sqrt(math.pi / 2.0), rel=1e-12)
    assert LinearSolver(2, 0.5).A_tilde == pytest.approx(math.gamma(0.125) / 4.0, rel=1e-12)


@pytest.mark.parametrize("N,beta", [(3, 1.0), (2, 0.5), (1, 0.25)])
def test_small_eta_law(N, beta):
    solver = LinearSolver(N, beta)
    eta = 1e-3
    value, _ = solver.F_value(eta)
    assert eta ** -beta * value == pytest.approx(solver.A_tilde, abs=1e-5)


def test_large_eta_limit_recovers_datum():
    solver = LinearSolver(3, 1.0)
    A = solver.large_eta_limit()
    assert A == pytest.approx(math.sqrt(math.pi / 2.0), abs=1e-6)
    assert abs(solver.c * A - 1.0) <= 1e-6
    assert set(solver.limit_samples) == {100.0, 200.0, 400.0, 1000.0}


@pytest.mark.slow
@pytest.mark.parametrize("N,beta", PAIRS)
def test_large_eta_limit_all_pairs(N, beta):
    solver = LinearSolver(N, beta)
    assert abs(solver.c * solver.large_eta_limit() - 1.0) <= 1e-6


@pytest.mark.parametrize("N,beta,eta", [(3, 1.0, 1.5), (1, 0.3, 2.0), (2, 0.5, 0.7)])
def test_recurrence(N, beta, eta):
    assert LinearSolver(N, beta).recurrence_residual(eta) <= 1e-6


def test_beta_range():
    with pytest.raises(DomainError):
        LinearSolver(3, 3.0)
    with pytest.raises(DomainError):
        LinearSolver(3, 0.0)
    assert LinearSolver(3, 3.0, allow_beta_N=True).c is None


def test_solution_scaling():
    solver = LinearSolver(3, 1.0)
    x, t = 0.8, 2.0
    u = solver.linear_solution(x, t)
    # u(λx, λ⁴t) = λ^{-β} u(x, t)
    lam = 1.7
    assert solver.linear_solution(lam * x, lam ** 4 * t) == pytest.approx(lam ** -1.0 * u, rel=1e-9)
    assert solver.linear_solution(0.0, 1.0) == pytest.approx(solver.c * solver.A_tilde, rel=1e-12)


def test_solution_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        LinearSolver(3, 1.0).linear_solution(1.0, 0.0)


@pytest.mark.slow
@pytest.mark.parametrize("N,beta,method", [
    (1, 7.0 / 16.0, "N1-monotone-map"),
    (2, 0.5, "N2-derivative-trick"),
    (3, 2.0, "lobe-monotonicity"),
    (4, 2.5, "lobe-monotonicity"),
])
def test_certified_positive_at_threshold(N, beta, method):
    report = LinearSolver(N, beta).certify_positivity()
    assert report.verdict == "certified-positive"
    assert report.method == method
    assert report.is_positive


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2, 3])
def test_witness_negative_near_beta_N(N):
    solver = LinearSolver(N, N - 0.05, scan_points=400)
    report = solver.certify_positivity()
    assert report.verdict == "witness-negative"
    eta, value = report.witness
    assert value < 0
    confirmed, error = solver.with_tol(solver.tol / 100.0).F_value(eta)
    assert confirmed < -error


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2, 3])
def test_negativity_witness_matches_kernel(N):
    witness = LinearSolver(N, N / 2.0).negativity_witness()
    assert witness.value < 0
    assert witness.relative_difference <= 1e-6


@pytest.mark.parametrize("eta", [0.5, 1.3, 2.7, 4.1, 5.0])
def test_F_at_beta_N_is_scaled_kernel(eta):
    at_N = LinearSolver(2, 2.0, allow_beta_N=True)
    kernel = KernelSolver(2).f_value(eta)[0]
    assert at_N.F_value(eta)[0] == pytest.approx(eta ** 2 * kernel, rel=1e-6, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("N", [1, 2, 3])
def test_F_at_beta_N_matches_kernel_at_random_points(N):
    at_N = LinearSolver(N, float(N), allow_beta_N=True)
    kernel = KernelSolver(N)
    for eta in np.random.default_rng(N).uniform(0.2, 8.0, 10):
        expected = eta ** N * kernel.f_value(eta)[0]
        assert at_N.F_value(eta)[0] == pytest.approx(expected, rel=1e-6, abs=1e-8)


@pytest.mark.slow
def test_envelope_bounds():
    envelope = LinearSolver(3, 1.0).envelope_constants(verify_samples=10000)
    assert envelope.K_star is not None and envelope.K_star > 0
    assert envelope.K_star_upper >= envelope.sharp_upper
    assert envelope.verified_samples == 10000


@pytest.mark.slow
def test_envelope_requires_positivity():
    solver = LinearSolver(1, 0.95, scan_points=400)
    with pytest.raises(PositivityRequiredError):
        solver.envelope_constants(profile=solver.build_profile(1e-3, 1e3, 200), verify_samples=0)


def test_riesz_trivial_density_is_zero():
    density = RadialDensity(np.array([0.0, 1.0, 2.0]), np.zeros(3), q=1.2)
    values = LinearSolver(3, 1.0).riesz_smoothing(density, np.array([0.5, 1.0]), 1.0)
    np.testing.assert_array_equal(values, [0.0, 0.0])


def test_riesz_q_range():
    density = RadialDensity(np.array([0.0, 1.0]), np.ones(2), q=2.0)
    with pytest.raises(DomainError):
        LinearSolver(3, 1.0).riesz_smoothing(density, 1.0, 1.0)


def test_radial_density_rejects_negative_values():
    with pytest.raises(DomainError):
        RadialDensity(np.array([0.0, 1.0]), np.array([1.0, -0.5]), q=1.2)


def _psi_grid():
    s = np.geomspace(1e-3, 50.0, 400)
    return s, np.exp(-s)


def test_radial_certificate_positive():
    s, psi = _psi_grid()
    report = certify_radial_positivity(3, s, psi, [(1.0, 1.0), (2.0, 0.5)], psi_derivative=-psi)
    assert report.verdict == "certified-positive"
    assert (report.samples['value'] > 0).all()


def test_radial_certificate_condition_b():
    s, psi = _psi_grid()
    psi[10] = -1e-3
    with pytest.raises(HypothesisViolationError) as info:
        certify_radial_positivity(3, s, psi, [(1.0, 1.0)])
    assert info.value.condition == "b"


def test_radial_certificate_condition_c():
    s, _ = _psi_grid()
    psi = 1.0 + 0.1 * np.sin(s)
    with pytest.raises(HypothesisViolationError) as info:
        certify_radial_positivity(3, s, psi, [(1.0, 1.0)])
    assert info.value.condition == "c"


def test_radial_certificate_needs_dimension_three():
    s, psi = _psi_grid()
    with pytest.raises(DomainError):
        certify_radial_positivity(2, s, psi, [(1.0, 1.0)])


@pytest.mark.slow
@pytest.mark.parametrize("N,beta", [(1, 0.5), (3, 2.0)])
def test_limit_chain(N, beta):
    assert LinearSolver(N, beta).limit_chain_residual() <= 1e-6


THRESHOLD_PAIRS = [(3, 1.0), (3, 2.0), (1, 0.25), (2, 0.5), (1, 7.0 / 16.0)]


@pytest.mark.parametrize("N,beta", [(1, 0.25), (3, 2.0)])
@pytest.mark.parametrize("eta", [1e-3, 1.2307e-3, 2e-3])
def test_small_eta_values_are_finite(N, beta, eta):
    solver = LinearSolver(N, beta)
    value, error = solver.F_value(eta)
    assert math.isfinite(value) and math.isfinite(error)
    assert value > 0


@pytest.mark.slow
@pytest.mark.parametrize("N,beta", THRESHOLD_PAIRS)
def test_F_positive_on_verification_grid(N, beta):
    values, errors = LinearSolver(N, beta).F_values(log_grid(1e-3, 1e3, 600))
    assert np.all(np.isfinite(values)) and np.all(np.isfinite(errors))
    assert np.all(values > 0)


@pytest.mark.slow
def test_lobe_certificate_at_dimension_three():
    report = LinearSolver(3, 2.0).certify_positivity()
    assert report.verdict == "certified-positive"
    assert report.min_value > 0


@pytest.mark.slow
@pytest.mark.parametrize("N,beta", [(3, 1.0), (1, 0.25)])
def test_default_profile_is_finite(N, beta):
    profile = LinearSolver(N, beta).build_profile()
    assert len(profile.grid.eta) == 600
    assert np.all(np.isfinite(profile.grid.values))
    assert np.all(np.isfinite(profile.errors))


@pytest.mark.slow
def test_scan_beta_threshold_brackets_transition():
    solver = LinearSolver(1, 0.3, scan_points=400)
    positive, negative, table = solver.scan_beta_threshold(0.3, 0.95, 0.05)
    assert positive is not None and negative is not None
    assert 0.3 <= positive < negative <= 0.95
    assert negative - positive <= 0.05
    assert list(table.columns) == ['beta', 'verdict', 'min_F', 'witness_eta']
    negative_flags = (table['verdict'] == "witness-negative").to_numpy()
    # β 가 커지면 한 번 음수가 된 뒤로 계속 음수
    assert np.all(np.diff(negative_flags.astype(int)) >= 0)
    witnessed = table[negative_flags]
    assert witnessed['witness_eta'].notna().all()
    assert (witnessed['min_F'] < 0).all()


def test_scan_beta_threshold_domain():
    solver = LinearSolver(1, 0.3)
    with pytest.raises(DomainError):
        solver.scan_beta_threshold(0.5, 0.4, 0.05)
    with pytest.raises(DomainError):
        solver.scan_beta_threshold(0.3, 0.9, 0.0)


def _gaussian_density():
    r = np.linspace(0.0, 4.0, 81)
    return RadialDensity(r, np.exp(-r ** 2), q=1.2)


@pytest.mark.slow
def test_riesz_smoothing_of_positive_density_is_positive():
    solver = LinearSolver(3, 1.0)
    values = solver.riesz_smoothing(_gaussian_density(), np.array([0.0, 0.5, 2.0, 5.0, 10.0]), 1.0)
    assert np.all(np.isfinite(values))
    assert np.all(values > 0)


@pytest.mark.slow
def test_riesz_smoothing_point_mass_limit():
    solver = LinearSolver(3, 1.0)
    radius = 1e-2
    # 반경 radius 공 위의 균일 밀도, 질량 1
    height = 3.0 / (4.0 * math.pi * radius ** 3)
    density = RadialDensity(np.array([0.0, radius]), np.array([height, height]), q=1.2)
    x = np.array([0.5, 1.0, 2.0])
    expected = solver.linear_solution(x, 1.0)
    np.testing.assert_allclose(solver.riesz_smoothing(density, x, 1.0), expected, rtol=1e-3)
