"""Brute-force oracles that share no code path with the library's fast routines."""

from __future__ import annotations

import itertools

from solenoid.groups import FreeAbelian, GroupElement, Heisenberg, KleinBottle


def heisenberg_matrix(p):
    a, b, c = p
    return ((1, a, c), (0, 1, b), (0, 0, 1))


def matmul(x, y):
    n = len(x)
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def heisenberg_product(p, q):
    m = matmul(heisenberg_matrix(p), heisenberg_matrix(q))
    return (m[0][1], m[1][2], m[0][2])


def klein_affine(p):
    """a: x -> x + 1, b: x -> -x; a^m b^n is x -> (-1)^n x + m, together with n itself."""
    m, n = p
    return ((-1) ** (n % 2), m, n)


def klein_product(p, q):
    s1, t1, n1 = klein_affine(p)
    s2, t2, n2 = klein_affine(q)
    # (f1 o f2)(x) = s1 (s2 x + t2) + t1
    return (s1 * t2 + t1, n1 + n2)


def box(family, r: int) -> list[GroupElement]:
    if isinstance(family, FreeAbelian):
        pts = itertools.product(range(-r, r + 1), repeat=family.rank)
    elif isinstance(family, Heisenberg):
        pts = itertools.product(range(-r, r + 1), repeat=3)
    elif isinstance(family, KleinBottle):
        pts = itertools.product(range(-r, r + 1), repeat=2)
    else:
        raise TypeError(family)
    return [GroupElement(family, tuple(p)) for p in pts]


def brute_index(H, elements) -> int:
    """Count left cosets met by ``elements`` using only ``H.contains``."""
    reps: list[GroupElement] = []
    for g in elements:
        gi = g.inverse()
        if not any(H.contains(gi * r) for r in reps):
            reps.append(g)
    return len(reps)


def brute_core_contains(H, reps, g) -> bool:
    """``g`` lies in every conjugate ``x H x^-1`` for ``x`` over coset representatives."""
    return all(H.contains(x.inverse() * g * x) for x in reps)
