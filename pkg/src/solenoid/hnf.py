"""Hermite normal form for full-rank sublattices of Z^n.

A lattice is kept as an upper-triangular tuple of basis rows ``H`` with
positive pivots ``H[i][i]`` and ``0 <= H[r][i] < H[i][i]`` for ``r < i``.
Transposing gives the lower-triangular matrix whose columns generate the
lattice.
"""

from __future__ import annotations

from math import prod
from typing import Iterable, Sequence

from .errors import InvalidSubgroup

Basis = tuple[tuple[int, ...], ...]


def hnf(vectors: Iterable[Sequence[int]], n: int) -> Basis:
    rows = [[int(x) for x in v] for v in vectors]
    for r in rows:
        if len(r) != n:
            raise InvalidSubgroup(f"vector {r} does not have {n} coordinates")
    rows = [r for r in rows if any(r)]
    basis: list[list[int]] = []
    for col in range(n):
        while True:
            nz = [r for r in rows if r[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(col, n):
                    r[j] -= q * piv[j]
            rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            raise InvalidSubgroup("vectors do not span a finite-index sublattice")
        piv = nz[0]
        rows.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
    for i in range(n):
        d = basis[i][i]
        for r in range(i):
            q = basis[r][i] // d
            if q:
                basis[r] = [a - q * b for a, b in zip(basis[r], basis[i])]
    return tuple(tuple(r) for r in basis)


def reduce(vec: Sequence[int], basis: Basis) -> tuple[int, ...]:
    """Canonical representative of ``vec`` modulo the lattice (coordinates in ``[0, H[i][i])``)."""
    v = list(vec)
    for i, row in enumerate(basis):
        q = v[i] // row[i]
        if q:
            for j in range(i, len(v)):
                v[j] -= q * row[j]
    return tuple(v)


def contains(basis: Basis, vec: Sequence[int]) -> bool:
    return not any(reduce(vec, basis))


def index(basis: Basis) -> int:
    return prod(row[i] for i, row in enumerate(basis))


def columns(basis: Basis) -> Basis:
    """The same lattice as a lower-triangular matrix whose columns are the basis vectors."""
    n = len(basis)
    return tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))


def image(matrix: Sequence[Sequence[int]], basis: Basis) -> Basis:
    """HNF of ``matrix`` applied to the lattice."""
    n = len(basis)
    vecs = [tuple(sum(matrix[i][k] * row[k] for k in range(n)) for i in range(n)) for row in basis]
    return hnf(vecs, n)


def scalar(p: int, n: int) -> Basis:
    return tuple(tuple(p if i == j else 0 for j in range(n)) for i in range(n))
