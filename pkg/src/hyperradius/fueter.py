"""Fueter-type bases, the symmetric products P_nu / V_nu / S_nu, and the operators.

Three flavors share one description: every degree-one basis function is a sum
``x_a u_a + x_b u_b`` of real variables times signed units.

* quaternion: zeta_s(x) = x_s - e_s x_0, s = 1, 2, 3, annihilated by D
* octonion:   zeta_s(x) = x_s - e_s x_0, s = 1..7, products left-folded
* mt:         xi_2(v) = v_2 + v_1 k, xi_3(v) = v_3 - v_1 j on purely imaginary v

Polynomial coefficients sit on the right of commuting real monomials;
operator units act on them from the left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Mapping, Sequence

from .algebra import (
    Octonion,
    Quaternion,
    SignedUnit,
    prime_norm_h,
    prime_norm_mt,
    prime_norm_o,
    unit_left_action,
    unit_right_action,
)
from .multiindex import (
    DegreeCapError,
    MultiIndex,
    Word,
    degree,
    enumerate_degree,
    enumerate_words,
    symbolic_degree_cap,
)


class Flavor(str, Enum):
    QUATERNION = "quaternion"
    OCTONION = "octonion"
    MT = "mt"

    @property
    def dim(self) -> int:
        """Length of the multi-indices nu."""
        return {"quaternion": 3, "octonion": 7, "mt": 2}[self.value]

    @property
    def n_components(self) -> int:
        return 8 if self is Flavor.OCTONION else 4

    @property
    def element_type(self):
        return Octonion if self is Flavor.OCTONION else Quaternion

    @property
    def axis_labels(self) -> tuple[int, ...]:
        """Axis names as written in formulas (xi_2, xi_3 for mt)."""
        return (2, 3) if self is Flavor.MT else tuple(range(1, self.dim + 1))

    @property
    def operator(self) -> str:
        return {"quaternion": "D", "octonion": "D_O", "mt": "D_MT"}[self.value]

    @property
    def left_fold(self) -> bool:
        """Octonion words are associated ((z z) z)...; the others are associative."""
        return self is Flavor.OCTONION


def as_flavor(flavor) -> Flavor:
    try:
        return Flavor(flavor.value if isinstance(flavor, Flavor) else str(flavor).lower())
    except ValueError:
        raise ValueError(f"unknown flavor {flavor!r}; expected quaternion, octonion or mt") from None


def infer_flavor(x, flavor=None) -> Flavor:
    if flavor is not None:
        flavor = as_flavor(flavor)
        if not isinstance(x, flavor.element_type):
            raise TypeError(f"{flavor.value} points must be {flavor.element_type.__name__}")
        return flavor
    if isinstance(x, Octonion):
        return Flavor.OCTONION
    if isinstance(x, Quaternion):
        return Flavor.QUATERNION
    raise TypeError(f"not an algebra element: {x!r}")


def check_point(x, flavor: Flavor) -> None:
    if not isinstance(x, flavor.element_type):
        raise TypeError(f"{flavor.value} points must be {flavor.element_type.__name__}")
    if flavor is Flavor.MT and x.c[0] != 0:
        raise ValueError("Moisil-Theodoresco points must have zero real part")


@lru_cache(maxsize=None)
def basis_terms(flavor: Flavor) -> tuple[tuple[tuple[int, SignedUnit], ...], ...]:
    """Per axis position, the (variable, unit) pairs of the degree-one basis function."""
    if flavor is Flavor.MT:
        # xi_2 = v2 - v1 i^-1 j = v2 + v1 k ; xi_3 = v3 - v1 i^-1 k = v3 - v1 j
        return (
            ((2, SignedUnit(1, 0)), (1, SignedUnit(1, 3))),
            ((3, SignedUnit(1, 0)), (1, SignedUnit(-1, 2))),
        )
    return tuple(((s, SignedUnit(1, 0)), (0, SignedUnit(-1, s))) for s in range(1, flavor.dim + 1))


def prime_norm(x, flavor=None) -> float:
    flavor = infer_flavor(x, flavor)
    if flavor is Flavor.OCTONION:
        return prime_norm_o(x)
    if flavor is Flavor.MT:
        return prime_norm_mt(x)
    return prime_norm_h(x)


# ---------------------------------------------------------------------------
# numeric evaluation


def _zeta_position(x, flavor: Flavor, pos: int):
    comps = [0.0] * flavor.n_components
    for var, unit in basis_terms(flavor)[pos]:
        comps[unit.index] += unit.sign * x.c[var]
    return flavor.element_type._make(comps)


def zeta(x, s: int, flavor=None):
    """The basis function with axis label ``s`` evaluated at ``x``."""
    flavor = infer_flavor(x, flavor)
    check_point(x, flavor)
    labels = flavor.axis_labels
    if s not in labels:
        raise ValueError(f"axis {s} invalid for {flavor.value}; expected one of {labels}")
    return _zeta_position(x, flavor, labels.index(s))


@dataclass(frozen=True)
class ZetaValues:
    point: object
    values: tuple
    norms: tuple[float, ...]


def zeta_values(x, flavor=None) -> ZetaValues:
    flavor = infer_flavor(x, flavor)
    check_point(x, flavor)
    values = tuple(_zeta_position(x, flavor, p) for p in range(flavor.dim))
    return ZetaValues(x, values, tuple(v.norm() for v in values))


@dataclass(frozen=True)
class PolyTable:
    """Values of P_nu (or V_nu, S_nu) at one point for all degrees <= max_degree."""

    flavor: Flavor
    max_degree: int
    entries: Mapping[MultiIndex, object]

    def __getitem__(self, nu) -> object:
        return self.entries[tuple(nu)]


def _eval_table(x, flavor: Flavor, n_max: int) -> PolyTable:
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    check_point(x, flavor)
    dim = flavor.dim
    zs = zeta_values(x, flavor).values
    one = flavor.element_type.one()
    entries: dict[MultiIndex, object] = {(0,) * dim: one}
    append = flavor.left_fold
    for n in range(1, n_max + 1):
        inv = 1.0 / n
        for nu in enumerate_degree(dim, n):
            acc = None
            for s in range(dim):
                if nu[s]:
                    prev = entries[nu[:s] + (nu[s] - 1,) + nu[s + 1 :]]
                    term = prev * zs[s] if append else zs[s] * prev
                    acc = term if acc is None else acc + term
            entries[nu] = acc * inv
    return PolyTable(flavor, n_max, entries)


def eval_P_table(x: Quaternion, n_max: int) -> PolyTable:
    """P_nu(x) for |nu| <= n_max via n P_nu = sum_s zeta_s P_{nu - e_s}."""
    return _eval_table(x, Flavor.QUATERNION, n_max)


def eval_V_table(x: Octonion, n_max: int) -> PolyTable:
    """V_nu(x) for |nu| <= n_max; the last letter is appended on the right."""
    return _eval_table(x, Flavor.OCTONION, n_max)


def eval_S_table(v: Quaternion, n_max: int) -> PolyTable:
    return _eval_table(v, Flavor.MT, n_max)


def eval_table(x, n_max: int, flavor=None) -> PolyTable:
    return _eval_table(x, infer_flavor(x, flavor), n_max)


def eval_selected(x, nus, flavor=None) -> dict[MultiIndex, object]:
    """P_nu(x) for the given multi-indices only, via the same recurrence.

    Evaluates the downward closure of ``nus``; for sparse series this is far
    smaller than the full table.
    """
    flavor = infer_flavor(x, flavor)
    check_point(x, flavor)
    dim = flavor.dim
    needed: set[MultiIndex] = set()
    stack = [tuple(int(p) for p in nu) for nu in nus]
    while stack:
        nu = stack.pop()
        if nu in needed:
            continue
        if len(nu) != dim or any(p < 0 for p in nu):
            raise ValueError(f"bad multi-index {nu} for {flavor.value}")
        needed.add(nu)
        stack.extend(nu[:s] + (nu[s] - 1,) + nu[s + 1 :] for s in range(dim) if nu[s])
    zs = zeta_values(x, flavor).values
    append = flavor.left_fold
    entries: dict[MultiIndex, object] = {}
    for nu in sorted(needed, key=sum):
        n = sum(nu)
        if n == 0:
            entries[nu] = flavor.element_type.one()
            continue
        acc = None
        for s in range(dim):
            if nu[s]:
                prev = entries[nu[:s] + (nu[s] - 1,) + nu[s + 1 :]]
                term = prev * zs[s] if append else zs[s] * prev
                acc = term if acc is None else acc + term
        entries[nu] = acc * (1.0 / n)
    return entries


# ---------------------------------------------------------------------------
# symbolic expansion


@dataclass(frozen=True)
class RealMonomialPoly:
    """sum over exponent vectors v of x^v * coefficient (coefficient on the right).

    Exponent vectors index x_0..x_3 (quaternion, mt) or x_0..x_7 (octonion).
    """

    flavor: Flavor
    terms: Mapping[tuple[int, ...], object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {m: c for m, c in self.terms.items() if not c.is_zero()}
        )

    @property
    def n_vars(self) -> int:
        return self.flavor.n_components

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "RealMonomialPoly") -> "RealMonomialPoly":
        if other.flavor is not self.flavor:
            raise ValueError("cannot add polynomials of different flavors")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return RealMonomialPoly(self.flavor, terms)

    def right_mul(self, a) -> "RealMonomialPoly":
        """Multiply every coefficient on the right by the algebra element ``a``."""
        return RealMonomialPoly(self.flavor, {m: c * a for m, c in self.terms.items()})

    def scale(self, r) -> "RealMonomialPoly":
        return RealMonomialPoly(self.flavor, {m: c * r for m, c in self.terms.items()})

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def coefficient_mass(self) -> float:
        """Sum of Euclidean norms of the collected coefficients."""
        return math.fsum(c.norm() for c in self.terms.values())

    def evaluate(self, x):
        check_point(x, self.flavor)
        xs = [float(a) for a in x.c]
        acc = self.flavor.element_type.zero()
        for m, c in self.terms.items():
            mono = 1.0
            for xv, e in zip(xs, m):
                if e:
                    mono *= xv**e
            acc = acc + float_element(c) * mono
        return acc


def float_element(c):
    return type(c)._make(float(a) for a in c.c)


def _exact_element(flavor: Flavor, comps) -> object:
    return flavor.element_type._make(
        a if isinstance(a, (int, Fraction)) else Fraction(a) for a in comps
    )


def iter_word_terms(word: Word, flavor) -> Iterator[tuple[tuple[int, ...], SignedUnit]]:
    """The 2**n uncollected (exponent, unit) terms of a basis word product.

    Word letters are 1-based axis positions (1 -> xi_2 for mt). Units are
    multiplied in word order as a left fold; real scalars are central so this
    matches the association of octonion words.
    """
    flavor = as_flavor(flavor)
    cap = symbolic_degree_cap() + 2
    if len(word) > cap:
        raise DegreeCapError(f"word expansion limited to length {cap}, got {len(word)}")
    basis = basis_terms(flavor)
    factors = []
    for letter in word:
        if not 1 <= letter <= flavor.dim:
            raise ValueError(f"letter {letter} invalid for {flavor.value}")
        factors.append(basis[letter - 1])
    nv = flavor.n_components
    for choice in product(*factors):
        expo = [0] * nv
        unit = SignedUnit(1, 0)
        for var, u in choice:
            expo[var] += 1
            unit = unit * u
        yield tuple(expo), unit


def expand_word(word: Word, flavor) -> RealMonomialPoly:
    flavor = as_flavor(flavor)
    acc: dict[tuple[int, ...], list[int]] = {}
    for expo, unit in iter_word_terms(word, flavor):
        comps = acc.setdefault(expo, [0] * flavor.n_components)
        comps[unit.index] += unit.sign
    return RealMonomialPoly(
        flavor, {m: flavor.element_type._make(c) for m, c in acc.items()}
    )


def expand_by_words(nu: Sequence[int], flavor) -> RealMonomialPoly:
    """(1/n!) * sum over A_nu of expand_word, straight from the definition."""
    flavor = as_flavor(flavor)
    nu = _check_nu(nu, flavor)
    acc: dict[tuple[int, ...], list[int]] = {}
    for word in enumerate_words(nu):
        for expo, unit in iter_word_terms(word, flavor):
            comps = acc.setdefault(expo, [0] * flavor.n_components)
            comps[unit.index] += unit.sign
    return _divide_word_sum(flavor, acc, degree(nu))


def _check_nu(nu, flavor: Flavor) -> MultiIndex:
    nu = tuple(int(p) for p in nu)
    if len(nu) != flavor.dim:
        raise ValueError(f"{flavor.value} multi-indices have {flavor.dim} parts, got {len(nu)}")
    if any(p < 0 for p in nu):
        raise ValueError(f"multi-index parts must be non-negative: {nu}")
    return nu


def _divide_word_sum(flavor: Flavor, acc, n: int) -> RealMonomialPoly:
    fact = math.factorial(n)
    return RealMonomialPoly(
        flavor,
        {m: flavor.element_type._make(Fraction(a, fact) for a in c) for m, c in acc.items()},
    )


@lru_cache(maxsize=None)
def _actions(flavor: Flavor):
    nc = flavor.n_components
    basis = basis_terms(flavor)
    out = []
    for terms in basis:
        acts = []
        for var, unit in terms:
            table = unit_right_action(unit.index, nc) if flavor.left_fold else unit_left_action(unit.index, nc)
            acts.append((var, unit.sign, table))
        out.append(tuple(acts))
    return tuple(out)


@lru_cache(maxsize=4096)
def word_sum_poly(flavor: Flavor, nu: MultiIndex) -> dict:
    """n! P_nu as {exponent: integer component tuple}, via the degree recurrence.

    Quaternion and mt prepend the first letter (zeta_s * W); octonion appends
    the last letter (W * zeta_s) to keep the left-fold association.
    """
    nv = flavor.n_components
    if sum(nu) == 0:
        one = [0] * nv
        one[0] = 1
        return {(0,) * nv: tuple(one)}
    acc: dict[tuple[int, ...], list[int]] = {}
    actions = _actions(flavor)
    for s, part in enumerate(nu):
        if not part:
            continue
        prev = word_sum_poly(flavor, nu[:s] + (part - 1,) + nu[s + 1 :])
        for var, sign, table in actions[s]:
            for expo, comps in prev.items():
                new = expo[:var] + (expo[var] + 1,) + expo[var + 1 :]
                target = acc.get(new)
                if target is None:
                    target = acc[new] = [0] * nv
                for j, cj in enumerate(comps):
                    if cj:
                        k, sg = table[j]
                        target[k] += sign * sg * cj
    return {m: tuple(c) for m, c in acc.items() if any(c)}


def expand_P(nu: Sequence[int], flavor=Flavor.QUATERNION) -> RealMonomialPoly:
    """Exact real-monomial expansion of P_nu (V_nu for octonion, S_nu for mt)."""
    flavor = as_flavor(flavor)
    nu = _check_nu(nu, flavor)
    n = degree(nu)
    cap = symbolic_degree_cap()
    if n > cap:
        raise DegreeCapError(f"symbolic expansion limited to degree {cap}, got {n}")
    return _divide_word_sum(flavor, word_sum_poly(flavor, nu), n)


def expand_V(nu: Sequence[int]) -> RealMonomialPoly:
    return expand_P(nu, Flavor.OCTONION)


def expand_S(nu: Sequence[int]) -> RealMonomialPoly:
    return expand_P(nu, Flavor.MT)


_OPERATOR_FLAVOR = {"D": Flavor.QUATERNION, "D_O": Flavor.OCTONION, "D_MT": Flavor.MT}


def operator_units(op: str) -> tuple[tuple[int, int], ...]:
    """(variable, unit index) pairs of sum_i e_i d/dx_i."""
    if op == "D":
        return tuple((i, i) for i in range(4))
    if op == "D_O":
        return tuple((i, i) for i in range(8))
    if op == "D_MT":
        return tuple((i, i) for i in range(1, 4))
    raise ValueError(f"unknown operator {op!r}; expected D, D_O or D_MT")


def apply_operator(p: RealMonomialPoly, op: str | None = None) -> RealMonomialPoly:
    """Exact symbolic application of D, D_O or D_MT (units multiply from the left)."""
    op = op or p.flavor.operator
    units = operator_units(op)
    if _OPERATOR_FLAVOR[op] is not p.flavor:
        raise ValueError(f"operator {op} does not act on {p.flavor.value} polynomials")
    nc = p.flavor.n_components
    acc: dict[tuple[int, ...], list] = {}
    for var, idx in units:
        table = unit_left_action(idx, nc)
        for expo, coeff in p.terms.items():
            e = expo[var]
            if not e:
                continue
            new = expo[:var] + (e - 1,) + expo[var + 1 :]
            target = acc.get(new)
            if target is None:
                target = acc[new] = [0] * nc
            for j, cj in enumerate(coeff.c):
                if cj:
                    k, sg = table[j]
                    target[k] += sg * e * cj
    return RealMonomialPoly(p.flavor, {m: p.flavor.element_type._make(c) for m, c in acc.items()})


def expand_series_part(terms, flavor) -> RealMonomialPoly:
    """sum of expand_P(nu) * a_nu over (nu, a_nu) pairs, a_nu exact or float."""
    flavor = as_flavor(flavor)
    out = RealMonomialPoly(flavor, {})
    for nu, a in terms:
        a = _exact_element(flavor, a.c)
        out = out + expand_P(nu, flavor).right_mul(a)
    return out
