"""Regression table of the worked examples: each check recomputes a published value."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .algebra import Octonion, Quaternion, prime_norm_h
from .fueter import Flavor, apply_operator, eval_P_table, expand_P, iter_word_terms, zeta, zeta_values
from .multiindex import enumerate_degree, multinomial_exact, multinomial_log
from .radius import (
    CONVERGING,
    DIVERGING,
    ball_volume_prime,
    probe_convergence,
    rho1_estimate,
    rho2_estimate,
    rho_tau_estimate,
    sigma_estimate,
)
from .series import SeriesSpec, majorant_log_terms, majorant_partial


@dataclass(frozen=True)
class CheckResult:
    name: str
    anchor: str
    passed: bool
    detail: str


def _close(a: float, b: float, rel: float) -> bool:
    return abs(a - b) <= rel * abs(b)


def _units():
    e = [Octonion.unit(i) for i in range(8)]
    ok = e[1] * e[2] == e[3] and e[1] * e[4] == e[5]
    return ok, f"e1e2={e[1] * e[2]}, e1e4={e[1] * e[4]}"


def _prime_norms():
    a = prime_norm_h(Quaternion(0, 1, 0, 2))
    b = prime_norm_h(Quaternion(1, 0, 2, 0))
    c = prime_norm_h(Quaternion(0, -3, 2, 1.5))
    ok = a == 2 and b == math.sqrt(5) and c == 3
    return ok, f"|i+2k|'={a}, |1+2j|'={b}, |-3i+2j+1.5k|'={c}"


def _non_submultiplicative():
    i, one_2j, i_2k = Quaternion(0, 1), Quaternion(1, 0, 2), Quaternion(0, 1, 0, 2)
    left = prime_norm_h(i * one_2j)
    right = prime_norm_h(i) * prime_norm_h(one_2j)
    left2 = prime_norm_h(i.inverse() * i_2k)
    right2 = prime_norm_h(i.inverse()) * prime_norm_h(i_2k)
    ok = left == 2 and right == math.sqrt(5) and left2 == math.sqrt(5) and right2 == 2
    return ok, f"|i(1+2j)|'={left} < {right}; |i^-1(i+2k)|'={left2} > {right2}"


def _ball_containment():
    x = Quaternion(0, 0.9, 0.9, 0)
    ok = prime_norm_h(x) < 1 < x.norm()
    return ok, f"|.9i+.9j|'={prime_norm_h(x)}, |.9i+.9j|={x.norm():.6f}"


def _symmetric_product():
    x = Quaternion(0.3, -0.2, 0.5, 0.1)
    z1, z2 = zeta(x, 1), zeta(x, 2)
    want = (z1 * z2 + z2 * z1) * 0.5
    got = eval_P_table(x, 2)[(1, 1, 0)]
    ok = multinomial_exact((1, 1, 0)) == 2 and (got - want).norm() < 1e-14
    return ok, f"2 P_(1,1,0) = z1 z2 + z2 z1 (err {(got - want).norm():.1e})"


def _zeta_at_q():
    q = Quaternion(0, 1 / 3, 1 / 3, 1 / 3)
    norms = zeta_values(q).norms
    ok = all(abs(v - 1 / 3) < 1e-15 for v in norms)
    return ok, f"|zeta_s(q)| = {norms}"


def _word_terms():
    counts = {n: sum(1 for _ in iter_word_terms(tuple([1, 2, 3] * 4)[:n], "quaternion")) for n in (1, 4, 8, 12)}
    return all(c == 2**n for n, c in counts.items()), f"uncollected terms {counts}"


def _regularity():
    bad = [
        nu
        for n in range(7)
        for nu in enumerate_degree(3, n)
        if not apply_operator(expand_P(nu, Flavor.QUATERNION), "D").is_zero()
    ]
    return not bad, f"D P_nu = 0 for all 84 |nu|<=6; failures {bad}"


def _octonion_regularity():
    bad = [
        nu
        for n in range(4)
        for nu in enumerate_degree(7, n)
        if not apply_operator(expand_P(nu, Flavor.OCTONION), "D_O").is_zero()
    ]
    return not bad, f"D_O V_nu = 0 for all |nu|<=3; failures {bad}"


def _sample_divergence():
    s = SeriesSpec.rule("factorial", label="sample")
    q = Quaternion(0, 1 / 3, 1 / 3, 1 / 3)
    logs = majorant_log_terms(s, q, 200)
    partial = majorant_partial(s, q, 100)
    ok = float(abs(logs).max()) < 1e-9 and abs(partial - 101) < 1e-9 and q.norm() < 1
    return ok, f"max|log term|={abs(logs).max():.1e}, partial(N=100)={partial:.12g}, |q|={q.norm():.6f}"


def _sample_radii():
    s = SeriesSpec.rule("factorial", label="sample")
    sigma = sigma_estimate(s, 2, 200)
    weak = rho_tau_estimate(s, 2, 200)
    r1 = rho1_estimate(s, 2, 200)
    ok = (
        _close(sigma.radius, 1 / 3, 1e-9)
        and _close(weak.rho.limsup_estimate, 1, 1e-9)
        and _close(weak.tau.limsup_estimate, 3, 1e-9)
        and _close(r1.radius, 1, 1e-9)
    )
    return ok, (
        f"sigma radius={sigma.radius:.9f}, rho={weak.rho.limsup_estimate:.9f}, "
        f"tau={weak.tau.limsup_estimate:.9f}, rho1={r1.radius:.9f}"
    )


def _tau_values():
    poly = SeriesSpec.table({(1, 0, 0): [1, 0, 0, 0], (2, 1, 0): [0, 1, 0, 0]})
    holo = SeriesSpec.rule("axis-geometric", ratio=2.0)
    wp = rho_tau_estimate(poly, 2, 40)
    wh = rho_tau_estimate(holo, 2, 40)
    ok = (
        wp.tau.limsup_estimate == 0
        and math.isinf(wp.radius)
        and _close(wh.tau.limsup_estimate, 1, 1e-12)
        and _close(wh.radius, 0.5, 1e-9)
    )
    return ok, f"polynomial tau={wp.tau.limsup_estimate}, holomorphic tau={wh.tau.limsup_estimate}, radius={wh.radius}"


def _stirling():
    k = 500
    growth = math.exp(multinomial_log((4 * k, k, k)) / (6 * k))
    est = sigma_estimate(SeriesSpec.rule("stirling"), 2, 6 * k)
    target = 2 ** (1 / 3) / 3
    ok = _close(growth, 3 / 2 ** (1 / 3), 5e-3) and _close(est.radius, target, 5e-3)
    return ok, f"C^(1/6k) at k=500: {growth:.6f} (limit {3 / 2 ** (1 / 3):.6f}); radius {est.radius:.6f} vs {target:.6f}"


def _rho2():
    s = SeriesSpec.rule("axis-geometric", label="sum zeta_1^n")
    r2 = rho2_estimate(s, 12)
    sig = sigma_estimate(s, 2, 200)
    ok = _close(r2.radius, 0.5, 0.1) and _close(sig.radius, 1.0, 0.01)
    return ok, f"rho2={r2.radius:.6f}, sigma radius={sig.radius:.6f}"


def _volumes():
    h = ball_volume_prime(1.0, "quaternion")
    o = ball_volume_prime(1.0, "octonion")
    ok = (
        _close(h.closed_form, 3 * math.pi, 1e-15)
        and _close(h.ratio, 6 / math.pi, 1e-12)
        and _close(h.numeric, h.closed_form, 1e-9)
        and _close(o.closed_form, 35 * math.pi, 1e-15)
        and _close(o.ratio, 24 * 35 / math.pi**3, 1e-12)
        and _close(o.numeric, o.closed_form, 1e-9)
    )
    return ok, f"H: {h.closed_form:.9f} ratio {h.ratio:.9f}; O: {o.closed_form:.9f} ratio {o.ratio:.9f}"


def _poly_cylinder():
    s = SeriesSpec.rule("power-of-two-support")
    radii = [0.5 + 0.02 * i for i in range(51)]
    notes = []
    ok = True
    for axis in range(1, 4):
        d = Quaternion.unit(axis)
        rows = probe_convergence(s, d, radii, 2**10)
        conv = max((r.r for r in rows if r.verdict == CONVERGING), default=math.nan)
        div = min((r.r for r in rows if r.verdict == DIVERGING), default=math.nan)
        ok &= 1 - 0.02 - 1e-9 <= conv < div <= 1 + 0.02 + 1e-9
        notes.append(f"axis {axis}: last converging {conv:.2f}, first diverging {div:.2f}")
    return ok, "; ".join(notes)


CHECKS: list[tuple[str, str, Callable[[], tuple[bool, str]]]] = [
    ("octonion units", "e1e2=e3, e1e4=e5 (epsilon table)", _units),
    ("primed norm values", "|i+2k|'=2, |1+2j|'=sqrt5, imaginary -> max", _prime_norms),
    ("non-submultiplicativity", "2 < sqrt5 and sqrt5 > 2", _non_submultiplicative),
    ("ball containment", ".9i+.9j in B'(0,1), not in B(0,1)", _ball_containment),
    ("symmetric product", "2 P_(1,1,0) = z1 z2 + z2 z1", _symmetric_product),
    ("zeta at (i+j+k)/3", "|zeta_s(q)| = 1/3", _zeta_at_q),
    ("2^n monomials", "each zeta word has 2^n real monomials", _word_terms),
    ("Fueter regularity", "D P_nu = 0", _regularity),
    ("octonion regularity", "D_O V_nu = 0 (cited expansion)", _octonion_regularity),
    ("sample divergence", "sum n! P_nu diverges at (i+j+k)/3", _sample_divergence),
    ("sample radii", "sigma radius 1/3, rho=1, tau=3, rho1=1", _sample_radii),
    ("tau values", "polynomial tau=0, holomorphic tau=1", _tau_values),
    ("Stirling radius", "(4k,k,k) series radius 2^(1/3)/3", _stirling),
    ("real-monomial factor 2", "rho2 = 1/2 of the zeta-basis radius", _rho2),
    ("ball volumes", "3 pi r^4 = 6/pi vol B; 35 pi r^8 = 24*35/pi^3 vol B", _volumes),
    ("poly-cylinder", "sum zeta_s^(2^n) converges exactly on |zeta_s|<1", _poly_cylinder),
]


def run_demo() -> list[CheckResult]:
    results = []
    for name, anchor, fn in CHECKS:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crash is a failed check, not an aborted table
            passed, detail = False, f"error: {exc!r}"
        results.append(CheckResult(name, anchor, bool(passed), detail))
    return results
