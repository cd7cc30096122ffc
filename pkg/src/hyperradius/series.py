"""Hypercomplex power series sum P_nu a_nu: coefficient sources, evaluation, majorant N(f).

The majorant is evaluated in the log domain, one multi-index at a time::

    log term(nu) = log|a_nu| - log n! + log multinomial(nu) + sum_s nu_s log|zeta_s(x)|

and each degree slice is exponentiated and summed with ``math.fsum``.
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .algebra import as_element
from .fueter import (
    Flavor,
    as_flavor,
    check_point,
    eval_selected,
    eval_table,
    zeta_values,
)
from .multiindex import MultiIndex, degree_array, multinomial_log_array


class SpecError(ValueError):
    """Malformed series specification."""


def _log_factorial(n: int) -> float:
    return math.lgamma(n + 1)


def _factorial_float(n: int) -> float:
    try:
        return float(math.factorial(n))
    except OverflowError:
        raise OverflowError(
            f"coefficient at degree {n} overflows a double; use the log-domain estimators"
        ) from None


class CoefficientSource(ABC):
    """Where the coefficients a_nu come from.

    ``support(n)`` returns the candidate multi-indices of degree n as an array,
    or None when every multi-index of that degree may carry a coefficient.
    """

    def __init__(self, flavor: Flavor):
        self.flavor = flavor
        self.dim = flavor.dim

    max_degree: int | None = None

    @abstractmethod
    def coefficient(self, nu: MultiIndex):
        """a_nu as a float algebra element (zero outside the support)."""

    def exact_coefficient(self, nu: MultiIndex):
        """a_nu with exact rational components."""
        return as_element([Fraction(a) for a in self.coefficient(nu).c], self.flavor.n_components)

    @abstractmethod
    def log_norms(self, n: int, nus: np.ndarray) -> np.ndarray:
        """log|a_nu| per row of ``nus`` (all of degree n); -inf where a_nu = 0."""

    def support(self, n: int) -> np.ndarray | None:
        return None

    def candidates(self, n: int) -> np.ndarray:
        sup = self.support(n)
        return degree_array(self.dim, n) if sup is None else sup

    def is_polynomial(self) -> bool:
        return self.max_degree is not None

    def to_json(self) -> dict:
        raise NotImplementedError


def _empty(dim: int) -> np.ndarray:
    return np.zeros((0, dim), dtype=np.int64)


class _ScalarRule(CoefficientSource):
    """a_nu = scalar(nu) * value for a fixed algebra element ``value``."""

    name = ""

    def __init__(self, flavor: Flavor, value: Sequence[float] | None = None):
        super().__init__(flavor)
        comps = list(value) if value is not None else [1.0]
        comps += [0.0] * (flavor.n_components - len(comps))
        self.value = as_element([float(a) for a in comps], flavor.n_components)
        self.params: dict = {}
        norm = self.value.norm()
        self._log_value = math.log(norm) if norm > 0 else -math.inf

    def scalar(self, nu: MultiIndex) -> float:
        raise NotImplementedError

    def exact_scalar(self, nu: MultiIndex):
        return Fraction(self.scalar(nu))

    def log_scalar(self, n: int, nus: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def in_support(self, nu: MultiIndex) -> bool:
        sup = self.support(sum(nu))
        if sup is None:
            return True
        return any(tuple(row) == tuple(nu) for row in sup)

    def coefficient(self, nu):
        nu = tuple(nu)
        if not self.in_support(nu):
            return self.flavor.element_type.zero()
        return self.value * self.scalar(nu)

    def exact_coefficient(self, nu):
        nu = tuple(nu)
        et = self.flavor.element_type
        if not self.in_support(nu):
            return et._make((0,) * self.flavor.n_components)
        s = self.exact_scalar(nu)
        return et._make(Fraction(a) * s for a in self.value.c)

    def log_norms(self, n, nus):
        return self.log_scalar(n, nus) + self._log_value

    def to_json(self):
        params = dict(self.params)
        if any(self.value.c[1:]) or self.value.c[0] != 1.0:
            params["value"] = list(self.value.c)
        return {"kind": "rule", "name": self.name, "params": params}


class ZeroRule(_ScalarRule):
    name = "zero"
    max_degree = -1

    def support(self, n):
        return _empty(self.dim)

    def scalar(self, nu):
        return 0.0

    def log_scalar(self, n, nus):
        return np.full(len(nus), -np.inf)


class ConstantUnitRule(_ScalarRule):
    """a_nu = value (1 by default) for every nu."""

    name = "constant-unit"

    def scalar(self, nu):
        return 1.0

    def exact_scalar(self, nu):
        return 1

    def log_scalar(self, n, nus):
        return np.zeros(len(nus))


class FactorialRule(_ScalarRule):
    """a_nu = n! for every nu: each zeta-word appears with coefficient 1."""

    name = "factorial"

    def scalar(self, nu):
        return _factorial_float(sum(nu))

    def exact_scalar(self, nu):
        return math.factorial(sum(nu))

    def log_scalar(self, n, nus):
        return np.full(len(nus), _log_factorial(n))


class AxisGeometricRule(_ScalarRule):
    """a_{n e_axis} = ratio**n * n!, i.e. sum (ratio zeta_axis)^n; zero off the axis."""

    name = "axis-geometric"

    def __init__(self, flavor, value=None, axis: int = 1, ratio: float = 1.0):
        super().__init__(flavor, value)
        self.params = {"axis": axis, "ratio": ratio}
        if not 1 <= axis <= flavor.dim:
            raise SpecError(f"axis must be in 1..{flavor.dim}, got {axis}")
        if ratio < 0:
            raise SpecError("ratio must be non-negative")
        self.axis = axis - 1
        self.ratio = float(ratio)

    def support(self, n):
        row = np.zeros((1, self.dim), dtype=np.int64)
        row[0, self.axis] = n
        return row

    def scalar(self, nu):
        n = sum(nu)
        return self.ratio**n * _factorial_float(n)

    def exact_scalar(self, nu):
        n = sum(nu)
        return Fraction(self.ratio) ** n * math.factorial(n)

    def log_scalar(self, n, nus):
        if self.ratio == 0:
            return np.full(len(nus), 0.0 if n == 0 else -np.inf)
        return np.full(len(nus), n * math.log(self.ratio) + _log_factorial(n))


class PowerOfTwoRule(_ScalarRule):
    """sum_m sum_s zeta_s^(2^m): a_{n e_s} = n! when n is a power of two."""

    name = "power-of-two-support"

    def support(self, n):
        if n < 1 or n & (n - 1):
            return _empty(self.dim)
        return np.eye(self.dim, dtype=np.int64) * n

    def scalar(self, nu):
        return _factorial_float(sum(nu))

    def exact_scalar(self, nu):
        return math.factorial(sum(nu))

    def log_scalar(self, n, nus):
        return np.full(len(nus), _log_factorial(n))


class StirlingRule(_ScalarRule):
    """Supported on nu_k = k * pattern (default (4, 1, 1)) with a = n!."""

    name = "stirling"

    def __init__(self, flavor, value=None, pattern: Sequence[int] | None = None):
        if pattern is None:
            pattern = [4, 1, 1] + [0] * (flavor.dim - 3) if flavor.dim >= 3 else [1] * flavor.dim
        pattern = [int(p) for p in pattern]
        super().__init__(flavor, value)
        self.params = {"pattern": pattern}
        if len(pattern) != flavor.dim or any(p < 0 for p in pattern) or sum(pattern) == 0:
            raise SpecError(f"pattern must be {flavor.dim} non-negative ints, not all zero")
        self.pattern = np.array(pattern, dtype=np.int64)
        self.period = int(self.pattern.sum())

    def support(self, n):
        if n % self.period:
            return _empty(self.dim)
        return (self.pattern * (n // self.period))[None, :]

    def scalar(self, nu):
        return _factorial_float(sum(nu))

    def exact_scalar(self, nu):
        return math.factorial(sum(nu))

    def log_scalar(self, n, nus):
        return np.full(len(nus), _log_factorial(n))


class TableSource(CoefficientSource):
    """Explicit finite table; lookups outside it return zero."""

    def __init__(self, flavor: Flavor, entries: Mapping[Sequence[int], Any]):
        super().__init__(flavor)
        table: dict[MultiIndex, Any] = {}
        for nu, a in entries.items():
            nu = tuple(int(p) for p in nu)
            if len(nu) != flavor.dim or any(p < 0 for p in nu):
                raise SpecError(f"bad multi-index {nu} for {flavor.value}")
            if not isinstance(a, flavor.element_type):
                a = as_element([float(x) for x in a], flavor.n_components)
            if not a.is_zero():
                table[nu] = a
        self.table = dict(sorted(table.items(), key=lambda kv: (sum(kv[0]), [-p for p in kv[0]])))
        self.max_degree = max((sum(nu) for nu in self.table), default=-1)
        self._by_degree: dict[int, list[MultiIndex]] = {}
        for nu in self.table:
            self._by_degree.setdefault(sum(nu), []).append(nu)

    def coefficient(self, nu):
        a = self.table.get(tuple(nu))
        return a if a is not None else self.flavor.element_type.zero()

    def support(self, n):
        rows = self._by_degree.get(n)
        if not rows:
            return _empty(self.dim)
        return np.array(rows, dtype=np.int64)

    def log_norms(self, n, nus):
        out = np.empty(len(nus))
        for i, row in enumerate(nus):
            a = self.table.get(tuple(int(p) for p in row))
            norm = a.norm() if a is not None else 0.0
            out[i] = math.log(norm) if norm > 0 else -np.inf
        return out

    def to_json(self):
        return {
            "kind": "table",
            "entries": [{"nu": list(nu), "re_components": list(a.c)} for nu, a in self.table.items()],
        }


RULES: dict[str, type[_ScalarRule]] = {
    cls.name: cls
    for cls in (ZeroRule, ConstantUnitRule, FactorialRule, AxisGeometricRule, PowerOfTwoRule, StirlingRule)
}


def make_rule(name: str, flavor, **params) -> CoefficientSource:
    flavor = as_flavor(flavor)
    try:
        cls = RULES[name]
    except KeyError:
        raise SpecError(f"unknown rule {name!r}; known: {', '.join(sorted(RULES))} (or a table)") from None
    try:
        return cls(flavor, **params)
    except TypeError as exc:
        raise SpecError(f"bad parameters for rule {name!r}: {exc}") from None


@dataclass(frozen=True)
class SeriesSpec:
    flavor: Flavor
    source: CoefficientSource
    label: str = ""

    def __post_init__(self):
        if self.source.flavor is not self.flavor:
            raise SpecError(
                f"coefficient source is for {self.source.flavor.value}, series is {self.flavor.value}"
            )

    @classmethod
    def rule(cls, name: str, flavor="quaternion", label: str = "", **params) -> "SeriesSpec":
        flavor = as_flavor(flavor)
        return cls(flavor, make_rule(name, flavor, **params), label or name)

    @classmethod
    def table(cls, entries, flavor="quaternion", label: str = "table") -> "SeriesSpec":
        flavor = as_flavor(flavor)
        return cls(flavor, TableSource(flavor, entries), label)

    def coefficient(self, nu):
        return self.source.coefficient(tuple(nu))

    def to_json(self) -> dict:
        return {"label": self.label, "flavor": self.flavor.value, "source": self.source.to_json()}


def parse_series(data: Mapping) -> SeriesSpec:
    """Build a SeriesSpec from the JSON document structure."""
    if not isinstance(data, Mapping):
        raise SpecError("series spec must be a JSON object")
    try:
        flavor = as_flavor(data["flavor"])
    except KeyError:
        raise SpecError("series spec needs a 'flavor'") from None
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    label = str(data.get("label", ""))
    source = data.get("source")
    if not isinstance(source, Mapping):
        raise SpecError("series spec needs a 'source' object")
    kind = source.get("kind")
    if kind == "rule":
        params = source.get("params") or {}
        if not isinstance(params, Mapping):
            raise SpecError("rule params must be an object")
        src = make_rule(str(source.get("name")), flavor, **params)
    elif kind == "table":
        entries = {}
        for e in source.get("entries") or []:
            try:
                nu, comps = e["nu"], e["re_components"]
            except (KeyError, TypeError):
                raise SpecError("table entries need 'nu' and 're_components'") from None
            if len(comps) != flavor.n_components:
                raise SpecError(
                    f"{flavor.value} coefficients have {flavor.n_components} components, got {len(comps)}"
                )
            if tuple(nu) in entries:
                raise SpecError(f"duplicate table entry {nu}")
            entries[tuple(nu)] = comps
        src = TableSource(flavor, entries)
    else:
        raise SpecError(f"source kind must be 'rule' or 'table', got {kind!r}")
    return SeriesSpec(flavor, src, label)


def load_series(path) -> SeriesSpec:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from None
    return parse_series(data)


# ---------------------------------------------------------------------------
# evaluation and majorant


@dataclass(frozen=True)
class EvalResult:
    value: object
    degree_used: int
    majorant_tail_estimate: float


def nonzero_slice(source: CoefficientSource, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(multi-indices, log|a_nu|) of degree n restricted to nonzero coefficients."""
    nus = source.candidates(n)
    if len(nus) == 0:
        return nus, np.zeros(0)
    logs = source.log_norms(n, nus)
    keep = np.isfinite(logs)
    return nus[keep], logs[keep]


def _log_zeta_norms(x, flavor: Flavor) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.array(zeta_values(x, flavor).norms))


def _weighted_log_powers(nus: np.ndarray, log_z: np.ndarray) -> np.ndarray:
    # sum_s nu_s * log|zeta_s| with 0 * log 0 = 0
    finite = np.isfinite(log_z)
    out = nus @ np.where(finite, log_z, 0.0)
    if not finite.all():
        out[(nus[:, ~finite] > 0).any(axis=1)] = -np.inf
    return out


_NEGLIGIBLE = math.log(1e-20)


def log_sum_exp(values: np.ndarray) -> float:
    """log(sum(exp(values))) with compensated (fsum) accumulation."""
    if len(values) == 0:
        return -math.inf
    top = float(np.max(values))
    if top == -math.inf:
        return -math.inf
    # terms below 1e-20/len relative to the largest change the sum by < 1e-20
    shifted = values - top
    shifted = shifted[shifted > _NEGLIGIBLE - math.log(len(values))]
    return top + math.log(math.fsum(np.exp(shifted).tolist()))


def majorant_log_degree_term(s: SeriesSpec, x, n: int) -> float:
    """log of the degree-n slice of N(f)(x); -inf when the slice vanishes."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    check_point(x, s.flavor)
    return _majorant_log_terms(s, _log_zeta_norms(x, s.flavor), range(n, n + 1))[0]


def _slice_log_terms(s: SeriesSpec, log_z: np.ndarray, degrees) -> list[tuple[int, bool, float]]:
    """(n, slice has coefficients, log of the degree-n majorant slice) per degree."""
    out = []
    for n in degrees:
        nus, logs = nonzero_slice(s.source, n)
        if len(nus) == 0:
            out.append((n, False, -math.inf))
            continue
        vals = logs - _log_factorial(n) + multinomial_log_array(nus) + _weighted_log_powers(nus, log_z)
        out.append((n, True, log_sum_exp(vals)))
    return out


def _majorant_log_terms(s: SeriesSpec, log_z: np.ndarray, degrees) -> list[float]:
    return [v for _, _, v in _slice_log_terms(s, log_z, degrees)]


def majorant_log_terms(s: SeriesSpec, x, N: int) -> np.ndarray:
    """log of every degree slice n = 0..N of N(f)(x)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    check_point(x, s.flavor)
    return np.array(_majorant_log_terms(s, _log_zeta_norms(x, s.flavor), range(N + 1)))


def majorant_degree_term(s: SeriesSpec, x, n: int) -> float:
    return math.exp(majorant_log_degree_term(s, x, n))


def _exp_or_inf(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


def majorant_partial(s: SeriesSpec, x, N: int) -> float:
    """sum_{n <= N} of the degree slices of N(f)(x)."""
    logs = majorant_log_terms(s, x, N)
    terms = [_exp_or_inf(v) for v in logs]
    if math.inf in terms:
        return math.inf
    return math.fsum(terms)


def bound3_degree_term(s: SeriesSpec, x, n: int) -> float:
    """(|x|')^n / n! * sum_{|nu|=n} multinomial(nu) |a_nu|, the per-degree upper bound."""
    from .fueter import prime_norm

    check_point(x, s.flavor)
    nus, logs = nonzero_slice(s.source, n)
    if len(nus) == 0:
        return 0.0
    r = prime_norm(x, s.flavor)
    mass = log_sum_exp(logs + multinomial_log_array(nus)) - _log_factorial(n)
    if r == 0:
        return math.exp(mass) if n == 0 else 0.0
    return _exp_or_inf(mass + n * math.log(r))


def bound3_partial(s: SeriesSpec, x, N: int) -> float:
    terms = [bound3_degree_term(s, x, n) for n in range(N + 1)]
    return math.inf if math.inf in terms else math.fsum(terms)


def _tail_estimate(source: CoefficientSource, logs: np.ndarray) -> float:
    # geometric extrapolation from the last two nonzero degree terms
    N = len(logs) - 1
    if source.is_polynomial() and source.max_degree <= N:
        return 0.0
    finite = [v for v in logs if v > -math.inf]
    if len(finite) < 2:
        return 0.0 if logs[-1] == -math.inf else math.inf
    last, prev = finite[-1], finite[-2]
    if last >= prev:
        return math.inf
    ratio = math.exp(last - prev)
    return _exp_or_inf(last) * ratio / (1.0 - ratio)


def eval_truncated(s: SeriesSpec, x, N: int) -> EvalResult:
    """sum_{n <= N} sum_{|nu| = n} P_nu(x) a_nu with coefficients on the right."""
    if N < 0:
        raise ValueError("N must be non-negative")
    check_point(x, s.flavor)
    terms = []
    for n in range(N + 1):
        for row in s.source.candidates(n):
            nu = tuple(int(p) for p in row)
            a = s.source.coefficient(nu)
            if not a.is_zero():
                terms.append((nu, a))
    sparse = all(s.source.support(n) is not None for n in range(N + 1))
    table = eval_selected(x, [nu for nu, _ in terms], s.flavor) if sparse else eval_table(x, N, s.flavor)
    parts = [table[nu] * a for nu, a in terms]
    et = s.flavor.element_type
    value = et._make(math.fsum(p.c[i] for p in parts) for i in range(s.flavor.n_components))
    return EvalResult(value, N, _tail_estimate(s.source, majorant_log_terms(s, x, N)))


def zeta_domain_contains(h, x, flavor=None) -> bool:
    """True iff |zeta_s(x)| <= |zeta_s(h)| for every axis s."""
    from .fueter import infer_flavor

    flavor = infer_flavor(h, flavor)
    hz = zeta_values(h, flavor).norms
    xz = zeta_values(x, flavor).norms
    return all(a <= b for a, b in zip(xz, hz))


# operation name used by the published interface
lemma_aux_domain_check = zeta_domain_contains
