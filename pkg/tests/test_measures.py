"""Purity and entropy measures, their limits, and the two-oscillator closed forms."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from oscent.covariance import (
    CovarianceMatrix,
    classical_covariance,
    quantum_ground_covariance,
    reduce_modes,
)
from oscent.errors import (
    AlphaOutOfDomainError,
    DegenerateParametersError,
    SubHeisenbergError,
)
from oscent.measures import (
    DEFAULT_ALPHAS,
    alpha_family,
    g_alpha,
    measure_report,
    one_mode_purity_closed_form,
    one_mode_sigma_closed_form,
    purity_from_determinant,
    sigma_tilde,
    two_mode_reduced_purity,
    von_neumann_entropy,
)
from oscent.models import (
    CircularLattice,
    GeneralizedChain,
    TwoMode,
    TwoModeGeneralized,
    normal_modes,
    two_mode_angles,
)

# One-oscillator reduction of the A=5, B=20, C=10 pair at unit actions,
# frozen from the covariance pipeline and confirmed by two closed forms.
SIGMA_REF = 0.5167716231557249
PURITY_REF = 0.967545386773935
ENTROPY_REF = 0.08547500487489379


def reference_reduction():
    cov = classical_covariance(normal_modes(TwoMode(A=5.0, B=20.0, C=10.0)),
                               np.ones(2))
    return reduce_modes(cov, [0])


def random_chain(rng, n, y_scale=0.5):
    a = rng.normal(size=(n, n))
    m = a @ a.T + 0.5 * np.eye(n)
    y = rng.uniform(-y_scale, y_scale, size=n)
    return GeneralizedChain(K=m + np.diag(y**2), Y=y)


# --- sigma_tilde --------------------------------------------------------------

def test_whole_system_sits_on_the_pure_floor():
    rng = np.random.default_rng(103)
    for _ in range(5):
        n = int(rng.integers(2, 7))
        c = float(rng.uniform(0.5, 3.0))
        cov = classical_covariance(normal_modes(random_chain(rng, n)), np.full(n, c))
        assert_allclose(sigma_tilde(cov), np.full(n, 0.5), atol=1e-12)


def test_reduced_sigma_reference_value():
    assert_allclose(sigma_tilde(reference_reduction())[0], SIGMA_REF, rtol=1e-12)


def test_sigma_same_for_both_one_mode_reductions():
    # Reductions of a pure pair share their spectrum.
    cov = classical_covariance(normal_modes(TwoMode(A=5.0, B=20.0, C=10.0)),
                               np.ones(2))
    s0 = sigma_tilde(reduce_modes(cov, [0]))
    s1 = sigma_tilde(reduce_modes(cov, [1]))
    assert_allclose(s0, s1, rtol=1e-12)


def test_sigma_quantum_route_matches():
    cov = quantum_ground_covariance(normal_modes(TwoMode(A=5.0, B=20.0, C=10.0)),
                                    hbar=0.7)
    assert_allclose(sigma_tilde(reduce_modes(cov, [0]))[0], SIGMA_REF, rtol=1e-12)


def test_sigma_needs_uniform_actions():
    cov = classical_covariance(normal_modes(TwoMode(A=5.0, B=20.0, C=10.0)),
                               np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        sigma_tilde(cov)


def test_sigma_below_floor_raises():
    shrunk = CovarianceMatrix(0.9 * np.eye(4) * 0.5, "classical", 0.5)
    with pytest.raises(SubHeisenbergError):
        sigma_tilde(shrunk)


# --- g_alpha ------------------------------------------------------------------

def test_g_alpha_pure_mode_is_one_for_every_order():
    for alpha in (0.5, 0.9, 2.0, 7.0, 64.0):
        assert_allclose(g_alpha(0.5, alpha), 1.0, atol=1e-15)


def test_g_alpha_order_two_is_inverse_width():
    sigma = np.array([0.5, 1.0, 2.5])
    assert_allclose(g_alpha(sigma, 2.0), 1.0 / (2.0 * sigma), rtol=1e-15)


def test_g_alpha_hand_value():
    # sigma = 3/2, alpha = 3: 1/(2^3 - 1^3) = 1/7.
    assert_allclose(g_alpha(1.5, 3.0), 1.0 / 7.0, rtol=1e-15)


def test_g_alpha_domain():
    for alpha in (1.0, 0.0, -2.0):
        with pytest.raises(AlphaOutOfDomainError):
            g_alpha(1.0, alpha)


# --- entropy ------------------------------------------------------------------

def test_entropy_zero_on_pure_floor():
    assert von_neumann_entropy(0.5) == 0.0
    assert von_neumann_entropy(np.full(4, 0.5)) == 0.0


def test_entropy_hand_value():
    # sigma = 3/2: 2 ln 2 - 1 ln 1 = 2 ln 2.
    assert_allclose(von_neumann_entropy(1.5), 2.0 * np.log(2.0), rtol=1e-15)


def test_entropy_adds_over_modes():
    parts = [von_neumann_entropy(s) for s in (0.8, 1.5, 2.2)]
    total = von_neumann_entropy(np.array([0.8, 1.5, 2.2]))
    assert_allclose(total, sum(parts), rtol=1e-14)


def test_entropy_reference_value():
    sigma = sigma_tilde(reference_reduction())
    assert_allclose(von_neumann_entropy(sigma), ENTROPY_REF, rtol=1e-12)


def test_entropy_below_floor_raises():
    with pytest.raises(SubHeisenbergError):
        von_neumann_entropy(0.4)


# --- determinant purity ---------------------------------------------------------

def test_whole_system_purity_is_one():
    rng = np.random.default_rng(107)
    for _ in range(5):
        n = int(rng.integers(2, 7))
        c = float(rng.uniform(0.5, 3.0))
        cov = classical_covariance(normal_modes(random_chain(rng, n)), np.full(n, c))
        assert_allclose(purity_from_determinant(cov), 1.0, atol=1e-10)


def test_reduced_purity_reference_value():
    assert_allclose(purity_from_determinant(reference_reduction()), PURITY_REF,
                    rtol=1e-12)


def test_purity_equals_product_of_inverse_widths():
    rng = np.random.default_rng(109)
    for _ in range(5):
        n = int(rng.integers(3, 8))
        chain = random_chain(rng, n, y_scale=0.0)
        cov = classical_covariance(normal_modes(chain), np.ones(n))
        red = reduce_modes(cov, list(range(n - 1)))
        sigma = sigma_tilde(red)
        assert_allclose(purity_from_determinant(red), np.prod(1.0 / (2.0 * sigma)),
                        rtol=1e-9)


# --- alpha family ----------------------------------------------------------------

def test_alpha_two_reproduces_determinant_purity():
    red = reference_reduction()
    fam = alpha_family(sigma_tilde(red), alphas=(2.0,))[2.0]
    assert_allclose(fam.purity, purity_from_determinant(red), rtol=1e-9)


def test_alpha_one_dispatches_to_entropy():
    sigma = np.array([0.9, 1.4])
    fam = alpha_family(sigma, alphas=(1.0,))[1.0]
    s = von_neumann_entropy(sigma)
    assert np.isnan(fam.purity)
    assert fam.tsallis == s and fam.renyi == s


def test_alpha_limit_is_continuous():
    # Deviation grows like |alpha - 1| times entropy squared, so keep the
    # spectra modest for a fixed 1e-5 window.
    rng = np.random.default_rng(113)
    for _ in range(100):
        sigma = rng.uniform(0.5, 2.0, size=int(rng.integers(1, 3)))
        s = von_neumann_entropy(sigma)
        for alpha in (1.0 - 1e-6, 1.0 + 1e-6):
            fam = alpha_family(sigma, alphas=(alpha,))[alpha]
            assert abs(fam.tsallis - s) < 1e-5
            assert abs(fam.renyi - s) < 1e-5


def test_entropies_nonincreasing_in_alpha():
    rng = np.random.default_rng(127)
    alphas = (0.9, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)
    for _ in range(100):
        sigma = rng.uniform(0.5 + 1e-6, 4.0, size=int(rng.integers(1, 5)))
        fams = alpha_family(sigma, alphas)
        tsallis = [fams[a].tsallis for a in alphas]
        renyi = [fams[a].renyi for a in alphas]
        assert np.all(np.diff(tsallis) <= 1e-12)
        assert np.all(np.diff(renyi) <= 1e-12)


def test_pure_spectrum_gives_unit_purity_zero_entropy():
    fams = alpha_family(np.full(3, 0.5), DEFAULT_ALPHAS)
    for alpha, fam in fams.items():
        if alpha != 1.0:
            assert_allclose(fam.purity, 1.0, atol=1e-14)
        assert_allclose(fam.tsallis, 0.0, atol=1e-14)
        assert_allclose(fam.renyi, 0.0, atol=1e-14)


def test_log_sum_survives_product_underflow():
    sigma = np.full(50, 60.0)
    fam = alpha_family(sigma, alphas=(64.0,))[64.0]
    assert fam.purity == 0.0  # the plain product underflows
    assert np.isfinite(fam.renyi) and fam.renyi > 0.0
    assert_allclose(fam.tsallis, 1.0 / 63.0, rtol=1e-12)


def test_default_alpha_grid():
    assert DEFAULT_ALPHAS == (0.9, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0)


# --- reports ---------------------------------------------------------------------

def test_measure_report_is_consistent():
    report = measure_report(reference_reduction(), alphas=(2.0, 4.0), label="x")
    assert report.label == "x"
    assert_allclose(report.linear_entropy, 1.0 - report.purity, rtol=1e-15)
    assert_allclose(report.von_neumann, ENTROPY_REF, rtol=1e-12)
    assert set(report.families) == {2.0, 4.0}
    row = report.csv_row()
    assert row.startswith("x,") and len(row.split(",")) == 4 + 2 * 4


# --- closed forms -----------------------------------------------------------------

def test_one_mode_sigma_closed_form_matches_pipeline():
    for c in (0.0, 5.0, 10.0, 15.0, 19.9):
        cov = classical_covariance(normal_modes(TwoMode(A=5.0, B=20.0, C=c)),
                                   np.ones(2))
        sigma = sigma_tilde(reduce_modes(cov, [0]))[0]
        assert_allclose(one_mode_sigma_closed_form(5.0, 20.0, c), sigma, rtol=1e-12)


def test_one_mode_sigma_closed_form_edge_values():
    assert one_mode_sigma_closed_form(5.0, 20.0, 0.0) == 0.5
    assert_allclose(one_mode_sigma_closed_form(5.0, 20.0, 10.0), SIGMA_REF,
                    rtol=1e-12)
    with pytest.raises(DegenerateParametersError):
        one_mode_sigma_closed_form(1.0, 1.0, 2.0)


def test_sigma_closed_form_agrees_with_angle_product():
    # Independent expression through the mixing angle and frequencies.
    for c in (3.0, 10.0, 17.0):
        ang = two_mode_angles(TwoMode(A=5.0, B=20.0, C=c))
        cos2, sin2 = np.cos(ang.angle) ** 2, np.sin(ang.angle) ** 2
        product = 0.5 * np.sqrt((cos2 / ang.omega1 + sin2 / ang.omega2)
                                * (ang.omega1 * cos2 + ang.omega2 * sin2))
        assert_allclose(one_mode_sigma_closed_form(5.0, 20.0, c), product,
                        rtol=1e-12)


def test_purity_closed_form_trivial_cases():
    assert one_mode_purity_closed_form(2.0, 2.0, 0.7) == 1.0
    assert one_mode_purity_closed_form(1.0, 5.0, 0.0) == 1.0


def test_two_mode_reduced_purity_matches_determinant():
    models = [
        TwoMode(A=5.0, B=20.0, C=10.0),
        TwoMode(A=2.0, B=3.0, C=1.5),
        TwoModeGeneralized(X1=1.0, X2=2.0, Y1=0.0, Y2=0.0, Z=1.0),
    ]
    for model in models:
        cov = classical_covariance(normal_modes(model), np.ones(2))
        det_route = purity_from_determinant(reduce_modes(cov, [0]))
        assert_allclose(two_mode_reduced_purity(model), det_route, rtol=1e-9)


def test_two_mode_reduced_purity_reference_value():
    assert_allclose(two_mode_reduced_purity(TwoMode(A=5.0, B=20.0, C=10.0)),
                    PURITY_REF, rtol=1e-12)


def test_two_mode_reduced_purity_rejects_other_models():
    with pytest.raises(DegenerateParametersError):
        two_mode_reduced_purity(CircularLattice(N=4, k=0.1, kappa=1.0))
