import numpy as np
import pytest

from models.errors import DomainError
from models.profiles import ProblemSpec, WeightedField
from solvers.semilinear_solver import TRANSFORM_TOL, HBoundSolver, SemilinearSolver, regime_summary


@pytest.fixture(scope="module")
def solver_3_3():
    return SemilinearSolver(ProblemSpec(N=3, p=3.0, epsilon=1e-3))


@pytest.fixture(scope="module")
def solver_1_6():
    return SemilinearSolver(ProblemSpec(N=1, p=6.0, epsilon=1e-3))


def test_problem_spec_requires_super_fujita():
    with pytest.raises(DomainError):
        ProblemSpec(N=3, p=2.0, epsilon=1e-3)
    with pytest.raises(DomainError):
        ProblemSpec(N=3, p=3.0, epsilon=-1.0)
    assert ProblemSpec(N=3, p=3.0, epsilon=0.1).beta == pytest.approx(2.0)


def test_regime_summary():
    summary = regime_summary(3, 3.0)
    assert summary['beta'] == pytest.approx(2.0)
    assert summary['fujita_exponent'] == pytest.approx(7.0 / 3.0)
    assert summary['super_fujita'] is True
    assert summary['r_c'] == pytest.approx(1.5)
    assert summary['p_positive_bound'] is None
    assert regime_summary(3, 3.0, beta_1=2.0)['p_positive_bound'] == pytest.approx(3.0)
    assert regime_summary(2, 2.5)['super_fujita'] is False
    with pytest.raises(DomainError):
        regime_summary(3, 1.0)



@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["solver_3_3", "solver_1_6"])
def test_gaussian_is_its_own_hankel_transform(fixture, request):
    solver = request.getfixturevalue(fixture)
    assert solver.bias == 0.0
    transformed = solver.forward(np.exp(-solver.r ** 2 / 2.0))
    window = (solver.k >= 1e-3) & (solver.k <= 10.0)
    np.testing.assert_allclose(transformed[window], np.exp(-solver.k[window] ** 2 / 2.0), atol=TRANSFORM_TOL)


@pytest.mark.slow
@pytest.mark.parametrize("N,p", [(1, 6.0), (2, 4.0), (3, 3.0), (3, 2.5)])
def test_solver_builds_across_dimensions(N, p):
    solver = SemilinearSolver(ProblemSpec(N=N, p=p, epsilon=1e-3))
    assert np.all(np.isfinite(solver.linear))


@pytest.mark.slow
def test_hankel_pair_is_inverse(solver_3_3):
    r = solver_3_3.r
    values = np.exp(-r ** 2) * r ** 0.5
    back = solver_3_3.inverse(solver_3_3.forward(values))
    window = (r > 1e-2) & (r < 5.0)
    np.testing.assert_allclose(back[window], values[window], atol=1e-8)


@pytest.mark.slow
def test_zero_epsilon_converges_immediately(solver_3_3):
    result = solver_3_3.with_epsilon(0.0).picard_solve()
    assert result.converged
    assert result.iterations == 1
    assert not np.any(result.field.values)


@pytest.mark.slow
def test_nonlinearity_off_reproduces_linear_part():
    solver = SemilinearSolver(ProblemSpec(N=3, p=3.0, epsilon=1e-2), nonlinearity_off=True)
    image = solver.duhamel_apply(solver.initial_field())
    np.testing.assert_array_equal(image.values, solver.spec.epsilon * solver.linear)
    result = solver.picard_solve()
    assert result.iterations == 1


@pytest.mark.slow
def test_field_must_share_grid(solver_3_3):
    other = WeightedField(solver_3_3.r[:-1] * 1.01, np.ones(solver_3_3.r.size - 1), solver_3_3.beta)
    with pytest.raises(DomainError):
        solver_3_3.duhamel_apply(other)


@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["solver_3_3", "solver_1_6"])
def test_picard_converges(fixture, request):
    solver = request.getfixturevalue(fixture)
    result = solver.picard_solve()
    assert result.converged
    assert result.iterations <= 15
    assert result.in_ball
    assert all(ratio <= 0.5 for ratio in result.observed_ratios)


@pytest.mark.slow
@pytest.mark.parametrize("fixture", ["solver_3_3", "solver_1_6"])
def test_contraction_ratio(fixture, request):
    table = request.getfixturevalue(fixture).contraction_check(pairs=20, seed=0)
    assert list(table.columns) == ['pair', 'ratio', 'image_norm', 'in_ball']
    assert len(table) == 20
    assert (table['ratio'] <= 0.5).all()
    assert table['in_ball'].all()


@pytest.mark.slow
def test_positive_envelopes(solver_3_3):
    result = solver_3_3.picard_solve()
    envelopes = solver_3_3.verify_envelopes(result.field)
    assert envelopes.positive
    assert envelopes.M_star > 0
    assert envelopes.M_star <= envelopes.M_star_upper
    assert envelopes.ratio == pytest.approx(1.0, abs=1e-2)


@pytest.mark.slow
def test_envelope_ratio_tends_to_one(solver_3_3):
    ratios = []
    for epsilon in (1e-2, 1e-3, 1e-4):
        solver = solver_3_3.with_epsilon(epsilon)
        ratios.append(solver.verify_envelopes(solver.picard_solve().field).ratio)
    gaps = np.abs(np.array(ratios) - 1.0)
    assert np.all(np.diff(gaps) <= 0)


@pytest.mark.slow
def test_zero_epsilon_gives_trivial_envelopes(solver_3_3):
    envelopes = solver_3_3.with_epsilon(0.0).verify_envelopes(solver_3_3.initial_field())
    assert envelopes.M_star is None
    assert envelopes.M_star_upper == 0.0
    assert envelopes.positive is False
    assert envelopes.ratio is None
    assert envelopes.linear_floor > 0


@pytest.mark.slow
def test_correction_exponent(solver_3_3):
    exponent, table = solver_3_3.correction_exponent([1e-3, 3e-3, 1e-2])
    assert len(table) == 3
    assert 2.8 <= exponent <= 3.2


def test_H_vanishes_as_t_goes_to_zero():
    solver = HBoundSolver(1, 6.0)
    assert solver.H_value(1.0, 1e-8) < 1e-3 * solver.H_value(1.0, 1.0)


def test_H_domain():
    with pytest.raises(DomainError):
        HBoundSolver(3, 2.0)
    with pytest.raises(DomainError):
        HBoundSolver(1, 6.0, c2=0.5).H_value(1.0, 0.0)


@pytest.mark.slow
def test_H_weighted_sup_stable_under_doubling():
    solver = HBoundSolver(1, 6.0)
    report = solver.H_bound_report(np.linspace(0.0, 8.0, 41), np.array([1.0]))
    assert np.isfinite(report.weighted_sup) and report.weighted_sup > 0
    assert report.stable
    assert list(report.samples.columns) == ['x', 't', 'H_value', 'weighted']


@pytest.mark.slow
def test_find_epsilon0(solver_1_6):
    epsilon0 = solver_1_6.find_epsilon0(pairs=3, steps=3)
    assert epsilon0 is not None
    assert 1e-6 <= epsilon0 <= 1.0
