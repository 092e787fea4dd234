import math

import numpy as np
import pytest

from farhi import fourier, quadrature, series, specfun
from farhi.fourier import ETA, FourierCoeffs, EtaFnParams
from farhi.identities import eta_gap_envelope
from farhi.specfun import DomainError

PI = math.pi
GAMMA = specfun.CONSTANTS.euler_gamma
LN_A = specfun.CONSTANTS.ln_glaisher
LN_TWO_PI = specfun.CONSTANTS.ln_two_pi
S_QUARTER = (PI * specfun.ln_gamma(0.25) - 0.5 * PI * math.log(2)
             - 0.75 * PI * math.log(PI) - 0.25 * PI * GAMMA)
GRID_33 = [i / 34 for i in range(1, 34)]


# --- coefficients ---------------------------------------------------------------

def test_closed_form_coeffs():
    c = FourierCoeffs.closed_form(1024)
    assert c.a0 == pytest.approx(0.5 * LN_TWO_PI, abs=1e-12)
    k = np.arange(1, 1025)
    assert np.array_equal(c.a[1:], 1.0 / (2 * k))
    assert np.allclose(c.b[1:], np.log(k) / (PI * k) + ETA / k, rtol=0, atol=1e-13)
    assert math.isnan(c.a[0]) and math.isnan(c.b[0])
    with pytest.raises(ValueError):
        c.b[3] = 0.0


def test_coeff_examples():
    assert fourier.coeff_a_quad(0) == pytest.approx(0.5 * LN_TWO_PI, abs=1e-12)
    assert fourier.coeff_a_quad(1) == pytest.approx(0.5, abs=1e-12)
    assert fourier.coeff_a_quad(4) == pytest.approx(0.125, abs=1e-12)
    assert abs(fourier.coeff_b_quad(1) - 0.76874789) <= 5e-9
    assert fourier.coeff_b_quad(2) == pytest.approx(ETA / 2 + math.log(2) / (2 * PI), abs=1e-11)
    assert fourier.coeff_b_quad(8) == pytest.approx((3 * math.log(2) / PI + ETA) / 8, abs=1e-11)


def test_coeff_suite_to_64():
    worst_a = max(abs(fourier.coeff_a_quad(k) - 1 / (2 * k)) for k in range(1, 65))
    worst_b = max(abs(fourier.coeff_b_quad(k) - fourier.eta_k_closed(k)) for k in range(1, 65))
    assert worst_a <= 1e-9
    assert worst_b <= 1e-9


def test_coeff_domain():
    with pytest.raises(DomainError):
        fourier.coeff_a_quad(-1)
    with pytest.raises(DomainError):
        fourier.coeff_b_quad(0)


def test_recurrences_closed_form():
    b = FourierCoeffs.closed_form(1024).b
    for k in range(1, 33):
        assert abs(b[2 * k] - (b[k] / 2 + math.log(2) / (2 * PI * k))) <= 1e-13
    for k in range(11):
        assert abs(b[2**k] - (math.log(2) / PI * k + ETA) / 2**k) <= 1e-13


# --- partial sums ---------------------------------------------------------

def test_partial_sum_examples():
    c = FourierCoeffs.closed_form(10**6)
    assert fourier.partial_sum(0.3, 0, c) == c.a0
    for n in (1, 2, 7, 100):
        expected = c.a0 + sum(c.a[k] * (-1) ** k for k in range(1, n + 1))
        assert fourier.partial_sum(0.5, n, c) == pytest.approx(expected, abs=1e-14)
    assert abs(fourier.partial_sum(0.5, 10**6, c) - 0.5 * math.log(PI)) < 1e-6
    assert abs(fourier.partial_sum(0.25, 10**6, c) - specfun.ln_gamma(0.25)) < 5e-4


def test_partial_sum_errors():
    c = FourierCoeffs.closed_form(10)
    with pytest.raises(IndexError):
        fourier.partial_sum(0.3, 11, c)
    with pytest.raises(DomainError):
        fourier.partial_sum(0.0, 5, c)


def test_partial_sum_convergence_rate():
    # error shrinks roughly like ln N / N
    c = FourierCoeffs.closed_form(10**5)
    e3 = abs(fourier.partial_sum(0.3, 10**3, c) - specfun.ln_gamma(0.3))
    e5 = abs(fourier.partial_sum(0.3, 10**5, c) - specfun.ln_gamma(0.3))
    assert e5 < e3 / 20


# --- Farhi, Kummer, Blagouchine forms ------------------------------------------

def test_farhi_rhs_examples():
    assert fourier.farhi_rhs(0.25, S_QUARTER) == pytest.approx(specfun.ln_gamma(0.25), abs=1e-14)
    assert fourier.farhi_rhs(0.5, 0.0) == pytest.approx(0.5 * math.log(PI), abs=1e-15)
    assert fourier.farhi_rhs(0.75, -S_QUARTER) == pytest.approx(specfun.ln_gamma(0.75), abs=1e-14)
    with pytest.raises(DomainError):
        fourier.farhi_rhs(0.0, 0.0)


def test_kummer_matches_farhi():
    rng = np.random.default_rng(3)
    for x, s in zip(rng.uniform(0.001, 0.999, 50), rng.normal(scale=3, size=50)):
        assert abs(fourier.kummer_rhs(x, s) - fourier.farhi_rhs(x, s)) <= 1e-13
    assert fourier.kummer_rhs(0.5, 0.0) == pytest.approx(0.5 * math.log(PI), abs=1e-15)
    assert fourier.kummer_rhs(0.25, S_QUARTER) == pytest.approx(specfun.ln_gamma(0.25), abs=1e-14)


def test_blagouchine_examples():
    s_acc = series.sum_alternating(lambda m: np.log(2 * m - 1) / (2 * m - 1), 1e-15).value
    assert fourier.blagouchine_rhs(1.0, PI / 2) == pytest.approx(s_acc, abs=1e-13)
    assert fourier.blagouchine_rhs(2.0, PI / 2) == pytest.approx(
        s_acc + math.log(2) * PI / 4, abs=1e-13)
    # b = 1 is the Kummer series: ln Gamma(x) = kummer_rhs(x, sigma/pi)... with sigma = pi * value
    for x in (0.1, 0.37, 0.8):
        sigma = fourier.blagouchine_rhs(1.0, 2 * PI * x)
        assert fourier.kummer_rhs(x, sigma) == pytest.approx(specfun.ln_gamma(x), abs=1e-13)


def test_blagouchine_domain():
    with pytest.raises(DomainError):
        fourier.blagouchine_rhs(0.0, 1.0)
    with pytest.raises(DomainError):
        fourier.blagouchine_rhs(1.0, 2 * PI)


# --- eta(x) -----------------------------------------------------------------

def test_eta_params():
    p = EtaFnParams.at(0.3)
    assert p.theta == 2.0 * PI * 0.3


def test_eta_fn_examples():
    assert fourier.eta_fn_closed(0.0) == 0.0
    assert fourier.eta_fn_closed(0.5) == pytest.approx(
        (GAMMA + LN_TWO_PI + 2 * math.log(PI) + 1) / (2 * PI), abs=1e-13)
    assert fourier.eta_fn_closed(1.0) == (GAMMA + LN_TWO_PI) / PI
    with pytest.raises(DomainError):
        fourier.eta_fn_closed(1.5)


def test_eta_fn_dual_evaluation():
    for x in GRID_33:
        closed = fourier.eta_fn_closed(x)
        quad = fourier.eta_fn_quad(x).value
        assert abs(closed - quad) <= 1e-9, x


def test_eta_fn_endpoint_continuity():
    left = [fourier.eta_fn_closed(x) for x in (1e-3, 1e-4, 1e-5)]
    assert left[0] > left[1] > left[2] > 0.0
    for x, v in zip((1e-3, 1e-4, 1e-5), left):
        assert v <= eta_gap_envelope(x)
    right = [abs(fourier.eta_fn_closed(1 - y) - ETA) for y in (1e-3, 1e-4, 1e-5)]
    assert right[0] > right[1] > right[2]
    for y, gap in zip((1e-3, 1e-4, 1e-5), right):
        assert gap <= eta_gap_envelope(1 - y)


def test_eta_fn_matches_quadrature_near_endpoints():
    for x in (1e-5, 1e-3, 1 - 1e-3, 1 - 1e-5):
        assert abs(fourier.eta_fn_closed(x) - fourier.eta_fn_quad(x).value) <= 1e-9


# --- log-cosine series, Parseval -------------------------------------------------

def test_logcos_examples():
    expected = (PI**2 / 12) * (GAMMA + math.log(4 * PI) - 12 * LN_A)
    assert fourier.logcos_series_closed(0.5) == pytest.approx(expected, abs=1e-12)
    # at x = 1/4 only even n survive: L(1/4) = (A - (pi^2/12) ln 2)/4, A the alternating sum
    recovered = 4 * fourier.logcos_series_closed(0.25) + PI**2 / 12 * math.log(2)
    assert recovered == pytest.approx(expected, abs=1e-12)


def _logcos_brute(x, big_n=10**7):
    parts = []
    for lo in range(2, big_n + 1, 10**6):
        n = np.arange(lo, min(lo + 10**6, big_n + 1), dtype=np.int64)
        nf = n.astype(float)
        parts.append(math.fsum(np.log(nf) / nf**2 * np.cos(2 * PI * np.mod(n * x, 1.0))))
    return math.fsum(parts)


def test_logcos_brute_force():
    # the summation-by-parts tail bound ln N/(N^2 sin(pi x)) is below 2e-13 here
    assert abs(fourier.logcos_series_closed(0.3) - _logcos_brute(0.3)) <= 1e-8


def test_logcos_symmetry():
    for x in GRID_33:
        d = fourier.logcos_series_closed(x) - fourier.logcos_series_closed(1 - x)
        assert abs(d) <= 1e-10, x


def test_parseval_quadrature():
    f = quadrature.Integrand(lambda t: specfun.ln_gamma(t) ** 2, 0.0, 1.0, singular_lower=True)
    assert abs(fourier.parseval_closed() - quadrature.integrate(f).value) <= 1e-9


def test_parseval_coefficient_side():
    n = 10**6
    k = np.arange(1, n + 1, dtype=float)
    c = PI * ETA
    a0 = 0.5 * LN_TWO_PI
    sum_a2 = math.fsum(0.25 / k**2)
    sum_b2 = math.fsum(((np.log(k) + c) / (PI * k)) ** 2)
    # sum_{k>N} 1/(4k^2) and sum_{k>N} (ln k + c)^2/(pi k)^2, integral plus half-term
    ln_n = math.log(n)
    tail_a = 0.25 * (1 / n - 0.5 / n**2)
    u = ln_n + c
    tail_b = ((u * u + 2 * u + 2) / n - 0.5 * u * u / n**2) / PI**2
    total = math.fsum([a0 * a0, 0.5 * (sum_a2 + tail_a), 0.5 * (sum_b2 + tail_b)])
    assert abs(fourier.parseval_closed() - total) <= 1e-8


def test_parseval_brute_force_zeta_dds():
    n = np.arange(2, 10**7 + 1, dtype=float)
    ln = np.log(n)
    big = 1e7
    lnb = math.log(big)
    brute = math.fsum(ln * ln / (n * n)) + (lnb**2 + 2 * lnb + 2) / big - 0.5 * lnb**2 / big**2
    delta = (brute - specfun.zeta_dds(2.0)) / (2 * PI**2)
    assert abs(delta) < 1e-9


# --- Ci form of the ln(1/t) coefficients ---------------------------------------

@pytest.mark.parametrize("k", [1, 16])
def test_shamov_ci_agreement(k):
    quad, closed = fourier.shamov_ci_identity(k)
    assert abs(quad - closed) <= 1e-10
    if k == 1:
        expected = (GAMMA + LN_TWO_PI - specfun.cosine_integral(2 * PI)) / PI
        assert closed == pytest.approx(expected, abs=1e-15)


def test_shamov_asymptotics():
    def diff(k):
        return abs(fourier.shamov_ci_identity(k)[1] - fourier.eta_k_closed(k))

    assert diff(64) < diff(8)
