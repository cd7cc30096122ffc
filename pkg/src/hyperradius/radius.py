"""Radius-of-convergence estimators, primed-ball volumes and convergence probes.

Every estimator streams the degrees n_min..n_max, forms a sequence s_n and
reports ``limsup_estimate = max(s_n over the trailing window)``; the raw
sequence is always returned with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy import integrate

from .fueter import Flavor, as_flavor, check_point, word_sum_poly
from .multiindex import DegreeCapError, MultiIndex, multinomial_log_array, symbolic_degree_cap
from .series import SeriesSpec, _log_zeta_norms, _slice_log_terms, log_sum_exp, nonzero_slice

CONVERGING = "converging"
DIVERGING = "diverging"
INCONCLUSIVE = "inconclusive"

PROBE_LOOKBACK = 20
PROBE_DECAY_RATIO = 0.999
# float slack when comparing log-domain terms against 1 and each other
_LOG_SLACK = 1e-9


@dataclass(frozen=True)
class RadiusEstimate:
    sequence: list[tuple[int, float]]
    limsup_estimate: float
    radius: float
    window: int

    @property
    def n_used(self) -> int:
        return self.sequence[-1][0] if self.sequence else 0


class WeakEstimate(NamedTuple):
    rho: RadiusEstimate
    tau: RadiusEstimate
    radius: float


class AbelResult(NamedTuple):
    holds: bool
    M: float
    witness: tuple[int, MultiIndex] | None


@dataclass(frozen=True)
class ProbeRow:
    r: float
    majorant_partial: float
    last_term: float
    verdict: str


class BallVolume(NamedTuple):
    closed_form: float
    numeric: float
    euclidean: float
    ratio: float


def default_window(count: int) -> int:
    """25% of the range, at least 10 points (or the whole range if shorter)."""
    return min(count, max(10, count // 4))


def _reciprocal(x: float) -> float:
    if x == 0:
        return math.inf
    if math.isinf(x):
        return 0.0
    return 1.0 / x


def _check_range(n_min: int, n_max: int) -> None:
    if not 2 <= n_min < n_max:
        raise ValueError(f"need 2 <= n_min < n_max, got n_min={n_min}, n_max={n_max}")


def make_estimate(
    sequence: Sequence[tuple[int, float]],
    window: int | None = None,
    occupied: Sequence[bool] | None = None,
) -> RadiusEstimate:
    """Tail maximum of the sequence as the limsup estimate.

    With ``occupied`` the window counts only degrees where the series has
    coefficients, so sparse supports (powers of two, multiples of six) are
    not drowned by the structural zeros between them.
    """
    seq = [(int(n), float(v)) for n, v in sequence]
    if occupied is None:
        values = [v for _, v in seq]
    else:
        values = [v for (_, v), o in zip(seq, occupied) if o]
    w = default_window(len(values)) if window is None else int(window)
    if w < 1:
        raise ValueError("window must be positive")
    tail = values[-w:]
    est = max(tail) if tail else 0.0
    return RadiusEstimate(seq, est, _reciprocal(est), w)


def _estimate(s: SeriesSpec, seq, occupied, n_max: int, window: int | None) -> RadiusEstimate:
    src = s.source
    if src.is_polynomial() and src.max_degree < n_max:
        # the scan runs past the last nonzero degree: the limsup is exactly 0
        return RadiusEstimate([(int(n), float(v)) for n, v in seq], 0.0, math.inf, window or 0)
    return make_estimate(seq, window, occupied)


def _root(log_value: float, n: int) -> float:
    if log_value == -math.inf:
        return 0.0
    return math.exp(log_value / n)


class _Slice(NamedTuple):
    log_sigma: float
    log_max: float
    log_tau: float
    argmax: MultiIndex | None


def _degree_slice(s: SeriesSpec, n: int) -> _Slice:
    nus, logs = nonzero_slice(s.source, n)
    if len(nus) == 0:
        return _Slice(-math.inf, -math.inf, -math.inf, None)
    lm = multinomial_log_array(nus)
    lf = math.lgamma(n + 1)
    i = int(np.argmax(logs))
    return _Slice(
        log_sum_exp(logs + lm) - lf,
        float(logs[i]) - lf,
        log_sum_exp(lm),
        tuple(int(p) for p in nus[i]),
    )


def sigma_estimate(s: SeriesSpec, n_min: int = 2, n_max: int = 200, window: int | None = None) -> RadiusEstimate:
    """s_n = (sum_{|nu|=n} multinomial(nu) |a_nu| / n!)^(1/n); radius 1/limsup."""
    _check_range(n_min, n_max)
    slices = [(n, _degree_slice(s, n)) for n in range(n_min, n_max + 1)]
    seq = [(n, _root(sl.log_sigma, n)) for n, sl in slices]
    return _estimate(s, seq, [sl.argmax is not None for _, sl in slices], n_max, window)


def rho_tau_estimate(s: SeriesSpec, n_min: int = 2, n_max: int = 200, window: int | None = None) -> WeakEstimate:
    """rho_n = (max |a_nu / n!|)^(1/n), tau_n = (sum over a_nu != 0 of multinomial)^(1/n)."""
    _check_range(n_min, n_max)
    rho_seq, tau_seq, occupied = [], [], []
    for n in range(n_min, n_max + 1):
        sl = _degree_slice(s, n)
        rho_seq.append((n, _root(sl.log_max, n)))
        tau_seq.append((n, _root(sl.log_tau, n)))
        occupied.append(sl.argmax is not None)
    rho = _estimate(s, rho_seq, occupied, n_max, window)
    tau = _estimate(s, tau_seq, occupied, n_max, window)
    return WeakEstimate(rho, tau, _reciprocal(rho.limsup_estimate * tau.limsup_estimate))


def rho1_estimate(s: SeriesSpec, n_min: int = 2, n_max: int = 200, window: int | None = None) -> RadiusEstimate:
    """Coefficient-maximum radius: 1 / limsup (max |a_nu / n!|)^(1/n).

    ``a_nu / n!`` is the coefficient each zeta-word carries, so the sample
    series sum n! P_nu (every word with coefficient 1) gives 1. No
    multinomial weighting: this is the estimate that ignores word counts.
    """
    _check_range(n_min, n_max)
    slices = [(n, _degree_slice(s, n)) for n in range(n_min, n_max + 1)]
    seq = [(n, _root(sl.log_max, n)) for n, sl in slices]
    return _estimate(s, seq, [sl.argmax is not None for _, sl in slices], n_max, window)


def real_monomial_mass(s: SeriesSpec, n: int) -> float:
    """sum over real monomials of |coefficient| in the degree-n part of sum P_nu a_nu."""
    flavor = s.flavor
    if flavor is Flavor.OCTONION:
        raise ValueError("the real-monomial estimate is defined for quaternion and mt series only")
    cap = symbolic_degree_cap()
    if n > cap:
        raise DegreeCapError(f"symbolic expansion limited to degree {cap}, got {n}")
    nus, _ = nonzero_slice(s.source, n)
    fact = math.factorial(n)
    prod = flavor.element_type._product
    acc: dict[tuple[int, ...], list[float]] = {}
    for row in nus:
        nu = tuple(int(p) for p in row)
        a = s.source.coefficient(nu)
        a_scaled = tuple(float(c) / fact for c in a.c)
        for expo, comps in word_sum_poly(flavor, nu).items():
            term = prod(comps, a_scaled)
            target = acc.get(expo)
            if target is None:
                acc[expo] = list(term)
            else:
                for i, t in enumerate(term):
                    target[i] += t
    return math.fsum(math.hypot(*c) for c in acc.values())


def rho2_estimate(s: SeriesSpec, n_max: int = 12, n_min: int = 1, window: int | None = None) -> RadiusEstimate:
    """Radius from expanding into real monomials: 1 / limsup (monomial mass)^(1/n)."""
    if not 1 <= n_min < n_max:
        raise ValueError(f"need 1 <= n_min < n_max, got n_min={n_min}, n_max={n_max}")
    seq, occupied = [], []
    for n in range(n_min, n_max + 1):
        mass = real_monomial_mass(s, n)
        seq.append((n, mass ** (1.0 / n) if mass > 0 else 0.0))
        occupied.append(len(nonzero_slice(s.source, n)[0]) > 0)
    return _estimate(s, seq, occupied, n_max, window)


def abel_check(s: SeriesSpec, r0: float, n_min: int = 0, n_max: int = 60) -> AbelResult:
    """Scan M = max |a_nu| r0^n over the range.

    A finite scan cannot prove boundedness; ``holds`` is False when M overflows
    or when the per-degree maximum of log(|a_nu| r0^n) strictly increases over
    the final third of the scanned degrees.
    """
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    if not 0 <= n_min < n_max:
        raise ValueError(f"need 0 <= n_min < n_max, got n_min={n_min}, n_max={n_max}")
    log_r0 = math.log(r0)
    per_degree: list[tuple[int, float, MultiIndex]] = []
    for n in range(n_min, n_max + 1):
        nus, logs = nonzero_slice(s.source, n)
        if len(nus):
            i = int(np.argmax(logs))
            per_degree.append((n, float(logs[i]) + n * log_r0, tuple(int(p) for p in nus[i])))
    if not per_degree:
        return AbelResult(True, 0.0, None)
    best = max(per_degree, key=lambda t: t[1])
    try:
        M = math.exp(best[1])
    except OverflowError:
        M = math.inf
    cutoff = n_max - (n_max - n_min) // 3
    tail = [v for n, v, _ in per_degree if n >= cutoff]
    growing = len(tail) >= 2 and all(b > a for a, b in zip(tail, tail[1:]))
    return AbelResult(math.isfinite(M) and not growing, M, (best[0], best[2]))


def ball_volume_prime(r: float, flavor="quaternion") -> BallVolume:
    """Volume of the primed-norm ball B'(0, r), closed form and by quadrature.

    Slicing at x0 = t leaves a cube of half-width sqrt(r^2 - t^2) in the
    imaginary coordinates, so vol = 2^m * 2 * int_0^r (r^2 - t^2)^(m/2) dt
    with m = 3 (quaternion) or 7 (octonion).
    """
    flavor = as_flavor(flavor)
    if flavor is Flavor.MT:
        raise ValueError("ball volumes are provided for quaternion and octonion flavors")
    if r < 0:
        raise ValueError("r must be non-negative")
    m = flavor.dim
    dim = m + 1
    if flavor is Flavor.QUATERNION:
        closed = 3 * math.pi * r**4
    else:
        closed = 35 * math.pi * r**8
    euclid = math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * r**dim
    if r == 0:
        return BallVolume(0.0, 0.0, 0.0, math.nan)
    integral, _ = integrate.quad(
        lambda t: (r * r - t * t) ** (m / 2), 0.0, r, epsabs=0.0, epsrel=1e-13, limit=200
    )
    numeric = 2 ** (m + 1) * integral
    return BallVolume(closed, numeric, euclid, closed / euclid)


def classify_terms(log_terms: Sequence[float]) -> str:
    """Verdict from log majorant terms taken at the degrees the series occupies.

    diverging: the last term is >= 1 and >= its value ``PROBE_LOOKBACK`` places
    earlier; converging: the last ``PROBE_LOOKBACK`` steps each shrink by a
    factor below 0.999 (or the terms vanish).
    """
    terms = list(log_terms)
    if not terms or all(v == -math.inf for v in terms):
        return CONVERGING
    look = min(PROBE_LOOKBACK, len(terms) - 1)
    if look < 1:
        return INCONCLUSIVE
    last, earlier = terms[-1], terms[-1 - look]
    if last >= -_LOG_SLACK and last >= earlier - _LOG_SLACK:
        return DIVERGING
    log_ratio = math.log(PROBE_DECAY_RATIO)
    window = terms[-1 - look :]
    if all(b == -math.inf or b < a + log_ratio for a, b in zip(window, window[1:])):
        return CONVERGING
    return INCONCLUSIVE


def probe_convergence(s: SeriesSpec, direction, radii: Sequence[float], N: int = 400) -> list[ProbeRow]:
    """Classify majorant behaviour at x = r * direction / |direction| for each r.

    The slices scale exactly as r^n along a ray (every zeta_s is linear), so the
    per-multi-index work is done once for the unit direction.
    """
    if N < 10:
        raise ValueError("N must be at least 10")
    check_point(direction, s.flavor)
    norm = direction.norm()
    if norm == 0:
        raise ValueError("direction must be nonzero")
    unit = direction / norm
    slices = _slice_log_terms(s, _log_zeta_norms(unit, s.flavor), range(N + 1))
    degrees = [n for n, occupied, _ in slices if occupied]
    base = [v for _, occupied, v in slices if occupied]
    finite_poly = s.source.is_polynomial() and s.source.max_degree <= N
    rows = []
    for r in radii:
        r = float(r)
        if r < 0:
            raise ValueError("radii must be non-negative")
        log_r = math.log(r) if r > 0 else -math.inf
        logs = [
            b if n == 0 else (b + n * log_r if b > -math.inf else -math.inf)
            for n, b in zip(degrees, base)
        ]
        terms = [_exp_or_inf(v) for v in logs]
        partial = math.inf if math.inf in terms else math.fsum(terms)
        last = terms[-1] if terms else 0.0
        verdict = CONVERGING if finite_poly else classify_terms(logs)
        rows.append(ProbeRow(r, partial, last, verdict))
    return rows


def _exp_or_inf(v: float) -> float:
    if v == -math.inf:
        return 0.0
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf
