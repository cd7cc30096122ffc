"""Independent reference computations used by the tests.

Nothing here goes through the recurrences or unit tables of the package:
quaternions multiply as 4x4 real matrices, octonions via an explicit
antisymmetric epsilon tensor, and symmetric products by summing every word.
"""

from itertools import permutations

import numpy as np

from hyperradius.multiindex import enumerate_words

TRIPLES = [(1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5)]


def _parity(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def epsilon_tensor():
    eps = np.zeros((8, 8, 8), dtype=int)
    for t in TRIPLES:
        for perm in permutations(range(3)):
            i, j, k = (t[p] for p in perm)
            eps[i, j, k] = _parity(perm)
    return eps


EPS = epsilon_tensor()


def oct_product(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(8)
    out[0] = a[0] * b[0] - a[1:] @ b[1:]
    out[1:] = a[0] * b[1:] + b[0] * a[1:]
    out += np.einsum("i,j,ijk->k", a, b, EPS)
    return out


def quat_matrix(q):
    """Left-regular representation: quat_matrix(a) @ b == a * b."""
    a, b, c, d = q
    return np.array(
        [
            [a, -b, -c, -d],
            [b, a, -d, c],
            [c, d, a, -b],
            [d, -c, b, a],
        ],
        dtype=float,
    )


def quat_product(a, b):
    return quat_matrix(a) @ np.asarray(b, dtype=float)


def zeta_vectors(x, flavor):
    """Basis values straight from the defining formulas, as component arrays."""
    x = np.asarray(x, dtype=float)
    if flavor == "mt":
        v1, v2, v3 = x[1], x[2], x[3]
        # v2 - v1 i^-1 j and v3 - v1 i^-1 k, with i^-1 = -i
        i_inv = np.array([0, -1.0, 0, 0])
        j = np.array([0, 0, 1.0, 0])
        k = np.array([0, 0, 0, 1.0])
        return [
            np.array([v2, 0, 0, 0]) - v1 * quat_product(i_inv, j),
            np.array([v3, 0, 0, 0]) - v1 * quat_product(i_inv, k),
        ]
    n = len(x)
    out = []
    for s in range(1, n):
        z = np.zeros(n)
        z[0] = x[s]
        z[s] = -x[0]
        out.append(z)
    return out


def word_average(x, nu, flavor):
    """(1/n!) * sum over all words of the (left-folded) basis products."""
    from math import factorial

    zs = zeta_vectors(x, flavor)
    prod = oct_product if flavor == "octonion" else quat_product
    width = 8 if flavor == "octonion" else 4
    total = np.zeros(width)
    for word in enumerate_words(nu):
        acc = np.zeros(width)
        acc[0] = 1.0
        for letter in word:
            acc = prod(acc, zs[letter - 1])
        total += acc
    return total / factorial(sum(nu))


def numeric_operator(f, x, units, h=1e-5):
    """sum_i e_i df/dx_i by central differences; f maps component arrays to arrays."""
    x = np.asarray(x, dtype=float)
    width = len(x)
    prod = oct_product if width == 8 else quat_product
    out = np.zeros(width)
    for i in units:
        dx = np.zeros(width)
        dx[i] = h
        deriv = (np.asarray(f(x + dx)) - np.asarray(f(x - dx))) / (2 * h)
        e = np.zeros(width)
        e[i] = 1.0
        out += prod(e, deriv)
    return out
