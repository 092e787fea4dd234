"""Registry of checkable identities and the machinery to run them.

Each entry pairs an independent evaluation (quadrature, direct summation or
accelerated summation) with a closed form, and a tolerance matched to the
engine behind the independent side.
"""

import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from . import budget, fourier, quadrature, series, specfun
from .specfun import CONSTANTS

PI = math.pi
GAMMA = CONSTANTS.euler_gamma
LN_TWO_PI = CONSTANTS.ln_two_pi
LN_A = CONSTANTS.ln_glaisher
ETA_CLOSED = (GAMMA + LN_TWO_PI) / PI

QUAD_TOL = 1e-12

LHS_KINDS = ("quadrature", "direct-sum", "accelerated-sum", "closed-form")


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    description: str
    anchor: str
    lhs: Callable
    rhs: Callable
    tolerance: float
    grid: Optional[Sequence] = None
    lhs_kind: str = "quadrature"
    rhs_kind: str = "closed-form"
    # called with [(point, lhs, rhs), ...]; returns a failure note or None
    sequence_check: Optional[Callable] = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.lhs_kind not in LHS_KINDS:
            raise ValueError(f"unknown lhs kind {self.lhs_kind!r}")


@dataclass
class CheckResult:
    id: str
    description: str
    lhs_value: float
    rhs_value: float
    abs_err: float
    rel_err: float
    tolerance: float
    passed: bool
    grid_point: Optional[str]
    evaluations: int
    elapsed: float
    note: Optional[str] = None


@dataclass
class Report:
    results: list
    all_pass: bool
    config_echo: dict = field(default_factory=dict)


# --- grids ----------------------------------------------------------------

SPECIAL_POINTS = (0.25, 1.0 / 3.0, 0.5, 0.75)


def interior_grid(extra=()):
    pts = {i / 34 for i in range(1, 34)} | set(SPECIAL_POINTS) | set(extra)
    return tuple(sorted(pts))


GRID = interior_grid()
GRID_WITH_ENDPOINTS = interior_grid((0.0, 1.0))
GRID_TO_ONE = interior_grid((1.0,))
T4_GRID = tuple(i / 10 for i in range(1, 10))
NEAR_ENDPOINTS = (0.0, 1e-5, 1e-4, 1e-3, 1 - 1e-3, 1 - 1e-4, 1 - 1e-5, 1.0)


# --- independent evaluators -------------------------------------------------

def _quad(weight, upper=1.0, singular=True):
    f = quadrature.Integrand(weight, 0.0, 1.0, singular_lower=singular)
    if upper == 1.0:
        return quadrature.integrate(f, QUAD_TOL).value
    return quadrature.integrate_to(f, upper, QUAD_TOL).value


def _psi_sin2(t):
    return specfun.digamma(t) * np.sin(PI * t) ** 2


def _psi_sin2_integral(x):
    # psi(t) sin^2(pi t) is bounded at 0, so plain Gauss-Kronrod applies
    return _quad(_psi_sin2, upper=x, singular=False)


_LOG_OVER_N2 = series.LogRational([(1.0, 0.0, 2)])


def _logcos_direct(x, n_terms=10**7):
    """sum_{n>=1} ln n/n^2 cos(2 pi n x), brute force with a Dirichlet tail bound."""
    s = abs(math.sin(PI * x))

    def term(n):
        return np.log(n) / (n * n) * np.cos(2.0 * PI * np.mod(n * x, 1.0))

    def tail(n):
        # ln t / t^2 decreases for t >= 2: summation by parts bound
        return _LOG_OVER_N2(n + 1) / s

    return series.sum_with_tail(term, tail, 1e-12, start=2, min_terms=n_terms - 1).value


def _glaisher_sum():
    """sum ln n/n^2 = -zeta'(2): 10^6 direct terms plus Euler-Maclaurin remainder."""
    f = _LOG_OVER_N2

    def integral_from(n):
        return (math.log(n) + 1.0) / n

    def correction(n):
        return series.euler_maclaurin_tail(f, integral_from, n)[0]

    def tail(n):
        return series.euler_maclaurin_tail(f, integral_from, n)[1]

    return series.sum_with_tail(f.vector, tail, 1e-14, start=2,
                                correction=correction, min_terms=10**6).value


def log_sine_series(b, phi, tol=1e-14):
    """sum_{n>=1} ln(b n)/n sin(n phi) without using its closed form.

    phi = pi/2 reduces to an alternating series over odd n and is accelerated;
    other angles are summed directly with an oscillatory remainder correction.
    """
    if phi == PI / 2:
        r = series.sum_alternating(lambda m: np.log(b * (2 * m - 1)) / (2 * m - 1), tol)
        return r.value
    f = series.LogRational([(1.0, 0.0, 1)], log_const=math.log(b))

    def term(n):
        return f.vector(n) * np.sin(n * phi)

    def tail(n):
        return series.boole_tail(f, phi, n + 1)[1]

    def correction(n):
        return series.boole_tail(f, phi, n + 1)[0].imag

    return series.sum_with_tail(term, tail, tol, correction=correction).value


def _alt(term_abs):
    return series.sum_alternating(term_abs, 1e-15).value


def _quarter_fourier_lhs():
    """ln Gamma(1/4) from its Fourier series at x = 1/4, series accelerated."""
    # sum cos(k pi/2)/k = sum (-1)^m/(2m)
    cos_part = -_alt(lambda m: 1.0 / (2.0 * m))
    # sum sin(k pi/2)/k (pi eta + ln k), over odd k = 2m - 1
    sin_part = _alt(lambda m: (PI * ETA_CLOSED + np.log(2 * m - 1)) / (2 * m - 1))
    return 0.5 * cos_part + 0.5 * LN_TWO_PI + sin_part / PI


def _gamma1_diff(a, b):
    return specfun.stieltjes_gamma1(a) - specfun.stieltjes_gamma1(b)


# --- sequence checks ---------------------------------------------------------

def _eta_endpoint_check(rows):
    """Closed-form eta(x) must approach 0 and eta monotonically, inside an envelope."""
    closed = {x: r for x, _, r in rows}
    left = [closed[x] for x in (1e-3, 1e-4, 1e-5, 0.0)]
    right = [abs(closed[x] - ETA_CLOSED) for x in (1 - 1e-3, 1 - 1e-4, 1 - 1e-5)]
    if not all(p > q for p, q in zip(left, left[1:])):
        return "eta(x) does not decrease monotonically to 0 as x -> 0+"
    if not all(p > q for p, q in zip(right, right[1:])):
        return "eta(x) does not approach eta monotonically as x -> 1-"
    for x in (1e-3, 1e-4, 1e-5):
        if closed[x] > eta_gap_envelope(x):
            return f"eta({x:g}) = {closed[x]:.3g} outside envelope"
    return None


def eta_gap_envelope(x):
    """Bound on |eta(x) - eta(endpoint)| from the small-t behaviour of ln Gamma."""
    # near 0: ln Gamma(t) ~ -ln t, eta(x) ~ pi x^2 (1 + 2|ln x|)
    # near 1: ln Gamma(t) ~ -gamma (t - 1), gap ~ (4 pi gamma/3)(1 - x)^3
    if x < 0.5:
        return 2.0 * PI * x * x * (1.0 + 2.0 * abs(math.log(x)))
    y = 1.0 - x
    return 2.0 * (4.0 * PI * GAMMA / 3.0) * y**3 + 1e-13


# --- registry -------------------------------------------------------------------

def _k1_series(x):
    return fourier.blagouchine_rhs(1.0, 2.0 * PI * x)


def registry():
    """All identities, ordered by id."""
    specs = [
        IdentitySpec(
            "L1", "2 int_0^1 lnG sin(2 pi x) = (gamma + ln 2pi)/pi",
            "Farhi constant closed form",
            lambda: fourier.coeff_b_quad(1, QUAD_TOL),
            lambda: (GAMMA + LN_TWO_PI) / PI,
            1e-9,
        ),
        IdentitySpec(
            "T2", "int_0^1 psi sin^2(pi x) = -(gamma + ln 2pi)/2",
            "digamma sin^2 integral",
            lambda: _psi_sin2_integral(1.0),
            lambda: -(GAMMA + LN_TWO_PI) / 2.0,
            1e-9,
        ),
        IdentitySpec(
            "T3", "int_0^1 lnG sin(pi x) = (ln pi - ln 2 + 1)/pi",
            "log-gamma half-frequency sine integral",
            lambda: _quad(lambda t: specfun.ln_gamma(t) * np.sin(PI * t)),
            lambda: (math.log(PI) - math.log(2.0) + 1.0) / PI,
            1e-9,
        ),
        IdentitySpec(
            "T4", "sum ln n/n^2 cos(2 pi n x) closed form",
            "integrated Farhi expansion: log-cosine series",
            _logcos_direct,
            fourier.logcos_series_closed,
            1e-8, grid=T4_GRID, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "R1", "sum (-1)^n ln n/n^2 = (pi^2/12)[gamma + ln 4pi - 12 ln A]",
            "alternating log series at x = 1/2",
            lambda: -_alt(lambda n: np.log(n) / (n * n)),
            lambda: PI**2 / 12.0 * (GAMMA + math.log(4.0 * PI) - 12.0 * LN_A),
            1e-9, lhs_kind="accelerated-sum",
        ),
        IdentitySpec(
            "C1", "zeta'(-1,x) - zeta'(-1,1-x) = Cl2(2 pi x)/(2 pi)",
            "reflection of zeta'(-1, x)",
            lambda x: specfun.zeta_prime_neg1(x) - specfun.zeta_prime_neg1(1.0 - x),
            lambda x: specfun.clausen2(2.0 * PI * x) / (2.0 * PI),
            1e-9, grid=GRID_WITH_ENDPOINTS, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "R2", "zeta'(-1,1/4) - zeta'(-1,3/4) = G/(2 pi)",
            "Catalan case of the zeta'(-1, x) reflection",
            lambda: specfun.zeta_prime_neg1(0.25) - specfun.zeta_prime_neg1(0.75),
            lambda: CONSTANTS.catalan / (2.0 * PI),
            1e-9, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "T5", "eta(x) closed form vs its integral definition",
            "eta(x) closed form",
            lambda x: fourier.eta_fn_quad(x, QUAD_TOL).value,
            fourier.eta_fn_closed,
            1e-9, grid=GRID_WITH_ENDPOINTS,
        ),
        IdentitySpec(
            "E12", "eta(1/2) = (gamma + ln 2pi + 2 ln pi + 1)/(2 pi)",
            "eta(1/2) special value",
            lambda: fourier.eta_fn_quad(0.5, QUAD_TOL).value,
            lambda: (GAMMA + LN_TWO_PI + 2.0 * math.log(PI) + 1.0) / (2.0 * PI),
            1e-9,
        ),
        IdentitySpec(
            "T6", "eta(x) extends continuously to eta(0) = 0, eta(1) = eta",
            "eta(x) endpoint extension",
            lambda x: fourier.eta_fn_quad(x, QUAD_TOL).value,
            fourier.eta_fn_closed,
            1e-9, grid=NEAR_ENDPOINTS, sequence_check=_eta_endpoint_check,
        ),
        IdentitySpec(
            "T7", "int_0^x psi sin^2(pi t) = lnG(x) sin^2(pi x) - (pi/2) eta(x)",
            "partial digamma sin^2 integral",
            _psi_sin2_integral,
            lambda x: (specfun.ln_gamma(x) * math.sin(PI * x) ** 2
                       - 0.5 * PI * fourier.eta_fn_closed(x)),
            1e-9, grid=GRID_TO_ONE,
        ),
        IdentitySpec(
            "C2", "int_0^1/2 psi sin^2(pi t) = -(gamma + ln 2pi + 1)/4",
            "partial digamma integral at x = 1/2",
            lambda: _psi_sin2_integral(0.5),
            lambda: -(GAMMA + LN_TWO_PI + 1.0) / 4.0,
            1e-9,
        ),
        IdentitySpec(
            "F0", "a0 = int_0^1 lnG = ln(2 pi)/2",
            "Fourier coefficients of ln Gamma",
            lambda: fourier.coeff_a_quad(0, QUAD_TOL),
            lambda: 0.5 * LN_TWO_PI,
            1e-9,
        ),
        IdentitySpec(
            "FA", "a_k = 1/(2k), k = 1..64",
            "Fourier coefficients of ln Gamma",
            lambda k: fourier.coeff_a_quad(k, QUAD_TOL),
            lambda k: 0.5 / k,
            1e-9, grid=tuple(range(1, 65)),
        ),
        IdentitySpec(
            "FB", "b_k = ln k/(pi k) + eta/k, k = 1..64",
            "Fourier coefficients of ln Gamma",
            lambda k: fourier.coeff_b_quad(k, QUAD_TOL),
            fourier.eta_k_closed,
            1e-9, grid=tuple(range(1, 65)),
        ),
        IdentitySpec(
            "FS1", "Fourier partial sum, N = 10^6, converges to lnG(x)",
            "pointwise Fourier convergence",
            lambda x: fourier.partial_sum(x, 10**6, fourier.FourierCoeffs.closed_form(10**6)),
            specfun.ln_gamma,
            5e-4, grid=(0.25, 1.0 / 3.0, 0.7), lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "K1", "Farhi form == Kummer/Connon form",
            "Kummer series equivalence",
            lambda x: fourier.farhi_rhs(x, _k1_series(x)),
            lambda x: fourier.kummer_rhs(x, _k1_series(x)),
            1e-9, grid=GRID, lhs_kind="closed-form",
        ),
        IdentitySpec(
            "B1", "sum ln(b n)/n sin(n phi) closed form",
            "Blagouchine log-sine series",
            lambda p: log_sine_series(*p),
            lambda p: fourier.blagouchine_rhs(*p),
            1e-9, grid=((1.0, PI / 2), (2.0, PI / 2), (1.0, 2.0 * PI / 3)),
            lhs_kind="accelerated-sum",
        ),
        IdentitySpec(
            "ST1", "gamma1(1/4) - gamma1(3/4) = -pi[ln 8pi + gamma - 2 ln(G(1/4)/G(3/4))]",
            "Coffey gamma_1 difference",
            lambda: _gamma1_diff(0.25, 0.75),
            lambda: -PI * (math.log(8.0 * PI) + GAMMA
                           - 2.0 * (specfun.ln_gamma(0.25) - specfun.ln_gamma(0.75))),
            1e-8, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "X3", "lnG(1/3) via gamma1(1/3) - gamma1(2/3)",
            "Fourier series at x = 1/3",
            lambda: (math.sqrt(3.0) / (6.0 * PI) * _gamma1_diff(1.0 / 3.0, 2.0 / 3.0)
                     + GAMMA / 6.0 + 2.0 / 3.0 * LN_TWO_PI - math.log(3.0) / 12.0),
            lambda: specfun.ln_gamma(1.0 / 3.0),
            1e-8, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "X4", "x = 1/4 Fourier evaluation reduces to Coffey's formula",
            "Fourier series at x = 1/4",
            _quarter_fourier_lhs,
            lambda: (math.log(2.0) / 4.0 + 0.5 * LN_TWO_PI
                     + 0.25 * (PI * ETA_CLOSED + _gamma1_diff(0.25, 0.75) / PI)),
            1e-8, lhs_kind="accelerated-sum",
        ),
        IdentitySpec(
            "N1", "int_0^x lnG = negapolygamma closed form",
            "negapolygamma closed form",
            lambda x: _quad(specfun.ln_gamma, upper=x),
            specfun.negapolygamma,
            1e-9, grid=GRID_TO_ONE,
        ),
        IdentitySpec(
            "G2", "sum ln n/n^2 = (pi^2/6)[12 ln A - gamma - ln 2pi]",
            "Glaisher log sum",
            _glaisher_sum,
            lambda: PI**2 / 6.0 * (12.0 * LN_A - GAMMA - LN_TWO_PI),
            1e-9, lhs_kind="direct-sum",
        ),
        IdentitySpec(
            "P1", "int_0^1 lnG^2 Parseval closed form",
            "Parseval integral of ln^2 Gamma",
            lambda: _quad(lambda t: specfun.ln_gamma(t) ** 2),
            fourier.parseval_closed,
            1e-8,
        ),
        IdentitySpec(
            "RK", "eta_2k = eta_k/2 + ln 2/(2 pi k); eta_2^k = ((ln 2/pi) k + eta)/2^k",
            "duplication recurrences for eta_k",
            lambda p: fourier.coeff_b_quad(2 * p[1] if p[0] == "2k" else 2 ** p[1], QUAD_TOL),
            _recurrence_rhs,
            1e-9, grid=tuple([("2k", k) for k in range(1, 33)] + [("2^k", k) for k in range(7)]),
        ),
        IdentitySpec(
            "SH1", "2 int sin(2 pi k t) ln(1/t) = [gamma + ln 2pi k - Ci(2pi k)]/(pi k)",
            "cosine-integral form of the ln(1/t) coefficients",
            lambda k: fourier.shamov_ci_identity(k, QUAD_TOL)[0],
            lambda k: (GAMMA + math.log(2.0 * PI * k)
                       - specfun.cosine_integral(2.0 * PI * k)) / (PI * k),
            1e-9, grid=(1, 4, 16, 64),
        ),
    ]
    return sorted(specs, key=lambda s: s.id)


def _recurrence_rhs(p):
    kind, k = p
    if kind == "2k":
        return fourier.eta_k_closed(k) / 2.0 + math.log(2.0) / (2.0 * PI * k)
    return (math.log(2.0) / PI * k + ETA_CLOSED) / 2**k


# --- evaluation --------------------------------------------------------------------

def _fmt_point(p):
    if p is None:
        return None
    if isinstance(p, float):
        return format(p, ".17g")
    return str(p)


def evaluate(spec, tolerance=None):
    """Run one identity; evaluator failures become failed results, never exceptions."""
    tol = spec.tolerance if tolerance is None else tolerance
    start = time.perf_counter()
    with budget.limits() as b:
        try:
            if spec.grid is None:
                rows = [(None, float(spec.lhs()), float(spec.rhs()))]
            else:
                rows = [(p, float(spec.lhs(p)), float(spec.rhs(p))) for p in spec.grid]
            note = spec.sequence_check(rows) if spec.sequence_check else None
        except Exception as exc:  # noqa: BLE001 - isolation is the contract
            return CheckResult(
                spec.id, spec.description, math.nan, math.nan, math.inf, math.inf,
                tol, False, None, b.evaluations, time.perf_counter() - start,
                note=f"{type(exc).__name__}: {exc}",
            )
    errs = [abs(l - r) for _, l, r in rows]
    i = int(np.argmax(errs))
    point, lhs, rhs = rows[i]
    abs_err = errs[i]
    rel_err = abs_err / abs(rhs) if rhs != 0.0 else abs_err
    passed = bool(abs_err <= tol) and note is None
    return CheckResult(
        spec.id, spec.description, lhs, rhs, abs_err, rel_err, tol, passed,
        _fmt_point(point), b.evaluations, time.perf_counter() - start, note,
    )


def run_all(specs, config=None):
    """Evaluate ``specs`` under ``config`` and assemble a Report ordered by id.

    ``config`` may carry ``tolerance_override``, ``max_terms`` and
    ``max_evals``; anything else on it is echoed into the report.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("no identities to run")
    override = getattr(config, "tolerance_override", None)
    max_terms = getattr(config, "max_terms", None)
    max_evals = getattr(config, "max_evals", None)
    results = []
    with budget.limits(max_terms=max_terms, max_evals=max_evals):
        for spec in sorted(specs, key=lambda s: s.id):
            results.append(evaluate(spec, override))
    echo = asdict(config) if config is not None and hasattr(config, "__dataclass_fields__") else {}
    return Report(results, all(r.passed for r in results), echo)


def with_tolerance(spec, tol):
    return replace(spec, tolerance=tol)
