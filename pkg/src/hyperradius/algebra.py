"""Quaternion and octonion arithmetic, Euclidean norms and the primed norms.

Components may be floats (numeric paths) or ``fractions.Fraction`` / ``int``
(exact symbolic paths); the arithmetic is generic over the component type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import ClassVar, Iterable, Sequence

# e_i e_j = +e_k for these ordered triples (and their cyclic shifts).
EPSILON_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (1, 2, 3),
    (1, 4, 5),
    (1, 7, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 4, 7),
    (3, 6, 5),
)


@dataclass(frozen=True)
class SignedUnit:
    """A basis unit ``sign * e_index`` of the octonions (quaternions are e0..e3)."""

    sign: int
    index: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if not 0 <= self.index < 8:
            raise ValueError(f"unit index out of range: {self.index}")

    def __mul__(self, other: "SignedUnit") -> "SignedUnit":
        u = UNIT_TABLE[self.index][other.index]
        return SignedUnit(self.sign * other.sign * u.sign, u.index)

    def __neg__(self) -> "SignedUnit":
        return SignedUnit(-self.sign, self.index)


def build_unit_table(triples: Iterable[tuple[int, int, int]] = EPSILON_TRIPLES, dim: int = 8):
    """Generate the ``dim x dim`` unit product table from the epsilon triples."""
    table: list[list[SignedUnit | None]] = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        table[0][i] = SignedUnit(1, i)
        table[i][0] = SignedUnit(1, i)
    for i in range(1, dim):
        table[i][i] = SignedUnit(-1, 0)
    for a, b, c in triples:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if max(x, y, z) >= dim:
                continue
            if table[x][y] is not None:
                raise ValueError(f"triple {(a, b, c)} overlaps an earlier one at e{x}e{y}")
            table[x][y] = SignedUnit(1, z)
            table[y][x] = SignedUnit(-1, z)
    missing = [(i, j) for i in range(dim) for j in range(dim) if table[i][j] is None]
    if missing:
        raise ValueError(f"triples leave products undefined: {missing}")
    return tuple(tuple(row) for row in table)


UNIT_TABLE: tuple[tuple[SignedUnit, ...], ...] = build_unit_table()

# (i, j, k, sign) with e_i e_j = sign e_k, flattened for the product loops
_OCT_TERMS = tuple(
    (i, j, UNIT_TABLE[i][j].index, UNIT_TABLE[i][j].sign) for i in range(8) for j in range(8)
)


def unit_left_action(index: int, dim: int) -> tuple[tuple[int, int], ...]:
    """For each component j, the (target, sign) of ``e_index * e_j``."""
    return tuple((UNIT_TABLE[index][j].index, UNIT_TABLE[index][j].sign) for j in range(dim))


def unit_right_action(index: int, dim: int) -> tuple[tuple[int, int], ...]:
    """For each component j, the (target, sign) of ``e_j * e_index``."""
    return tuple((UNIT_TABLE[j][index].index, UNIT_TABLE[j][index].sign) for j in range(dim))


class _Hypercomplex:
    """Shared behaviour of fixed-dimension real algebras with a multiplicative norm."""

    __slots__ = ("c",)
    DIM: ClassVar[int]

    def __init__(self, *components):
        if len(components) == 1 and not isinstance(components[0], Real):
            components = tuple(components[0])
        if len(components) > self.DIM:
            raise ValueError(f"{type(self).__name__} takes at most {self.DIM} components")
        comps = tuple(components) + (0,) * (self.DIM - len(components))
        for x in comps:
            if not isinstance(x, Real):
                raise TypeError(f"components must be real numbers, got {type(x).__name__}")
            if isinstance(x, float) and not math.isfinite(x):
                raise ValueError("components must be finite")
        object.__setattr__(self, "c", comps)

    @classmethod
    def _make(cls, comps):
        obj = object.__new__(cls)
        object.__setattr__(obj, "c", tuple(comps))
        return obj

    @classmethod
    def unit(cls, index: int, sign: int = 1):
        comps = [0] * cls.DIM
        comps[index] = sign
        return cls._make(comps)

    @classmethod
    def zero(cls):
        return cls._make((0,) * cls.DIM)

    @classmethod
    def one(cls):
        return cls.unit(0)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __iter__(self):
        return iter(self.c)

    def __len__(self):
        return self.DIM

    def __getitem__(self, i):
        return self.c[i]

    def __eq__(self, other):
        if isinstance(other, Real):
            other = type(self)(other)
        if type(other) is not type(self):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash((type(self).__name__, self.c))

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(repr(x) for x in self.c)})"

    def __add__(self, other):
        if isinstance(other, Real):
            return self._make((self.c[0] + other,) + self.c[1:])
        if type(other) is not type(self):
            return NotImplemented
        return self._make(a + b for a, b in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return self._make(-a for a in self.c)

    def __sub__(self, other):
        if isinstance(other, Real):
            return self + (-other)
        if type(other) is not type(self):
            return NotImplemented
        return self._make(a - b for a, b in zip(self.c, other.c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return self._make(a * other for a in self.c)
        if type(other) is not type(self):
            return NotImplemented
        return self._make(self._product(self.c, other.c))

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self._make(other * a for a in self.c)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._make(a / other for a in self.c)
        if type(other) is not type(self):
            return NotImplemented
        return self * other.inverse()

    @staticmethod
    def _product(a, b):
        raise NotImplementedError

    @property
    def real(self):
        return self.c[0]

    @property
    def imag(self) -> tuple:
        return self.c[1:]

    def conj(self):
        return self._make((self.c[0],) + tuple(-a for a in self.c[1:]))

    def norm2(self):
        return sum(a * a for a in self.c)

    def norm(self) -> float:
        # hypot avoids overflow/underflow of the squared sum
        return math.hypot(*(float(a) for a in self.c))

    def inverse(self):
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError(f"{type(self).__name__} zero has no inverse")
        return self._make(a / n2 for a in self.conj().c)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)


class Quaternion(_Hypercomplex):
    """x0 + x1 i + x2 j + x3 k."""

    __slots__ = ()
    DIM = 4

    def __init__(self, x0=0, x1=0, x2=0, x3=0):
        if not isinstance(x0, Real) and x1 == x2 == x3 == 0:
            super().__init__(x0)
        else:
            super().__init__(x0, x1, x2, x3)

    x0 = property(lambda self: self.c[0])
    x1 = property(lambda self: self.c[1])
    x2 = property(lambda self: self.c[2])
    x3 = property(lambda self: self.c[3])

    @staticmethod
    def _product(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )


class Octonion(_Hypercomplex):
    """c0 e0 + c1 e1 + ... + c7 e7 with the epsilon multiplication table."""

    __slots__ = ()
    DIM = 8

    @staticmethod
    def _product(a, b):
        out = [0] * 8
        for i, j, k, sign in _OCT_TERMS:
            ai = a[i]
            if ai:
                bj = b[j]
                if bj:
                    if sign > 0:
                        out[k] += ai * bj
                    else:
                        out[k] -= ai * bj
        return out


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    return a * b


def conj(x):
    return x.conj()


def inverse(x):
    return x.inverse()


def euclid_norm(x) -> float:
    return x.norm()


def prime_norm_h(q: Quaternion) -> float:
    """max over s of sqrt(x0^2 + xs^2)."""
    x0 = float(q.c[0])
    return max(math.hypot(x0, float(xs)) for xs in q.c[1:])


def prime_norm_o(o: Octonion) -> float:
    x0 = float(o.c[0])
    return max(math.hypot(x0, float(xs)) for xs in o.c[1:])


def prime_norm_mt(v: Quaternion) -> float:
    """Bicylinder gauge max{|(v1, v2)|, |(v1, v3)|} of a purely imaginary quaternion."""
    if v.c[0] != 0:
        raise ValueError("Moisil-Theodoresco points must have zero real part")
    _, v1, v2, v3 = (float(a) for a in v.c)
    return max(math.hypot(v1, v2), math.hypot(v1, v3))


def as_element(components: Sequence[Real], n_components: int):
    """Build a Quaternion (4) or Octonion (8) from a component list."""
    if len(components) != n_components:
        raise ValueError(f"expected {n_components} components, got {len(components)}")
    if n_components == 4:
        return Quaternion(*components)
    if n_components == 8:
        return Octonion(*components)
    raise ValueError(f"no algebra with {n_components} components")
