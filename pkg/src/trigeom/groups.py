"""Generators for the classical groups, as permutations of a space's points.

Matrices act on row vectors (x -> xM).  GL(n, q) is generated here by the
coordinate permutation matrices, diag(w, 1, ..., 1) for a primitive w, and
the transvection I + E_01; conjugating the transvection by the diagonal and
permutation matrices gives every elementary transvection, so this really is
all of GL(n, q).
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

import numpy as np

from .field import Field
from .perm import PermGroup
from .spaces import (PointLineGeometry, _normalize, affine_space, complete_graph,
                     hermitian_unital, projective_space)

Matrix = list[list[int]]

CASES = ("symmetric", "pgl", "pgammal", "agl", "agammal", "pgammau")


def _identity(F: Field, n: int) -> Matrix:
    return [[F.one_code if i == j else 0 for j in range(n)] for i in range(n)]


def _vec_mat(F: Field, x: Sequence[int], M: Matrix) -> tuple[int, ...]:
    add, mul = F.add_table, F.mul_table
    out = []
    for j in range(len(M[0])):
        acc = 0
        for i, xi in enumerate(x):
            if xi:
                acc = add[acc][mul[xi][M[i][j]]]
        out.append(acc)
    return tuple(out)


def linear_generators(F: Field, n: int) -> list[Matrix]:
    gens = []
    I = _identity(F, n)
    swap = [row[:] for row in I]
    swap[0], swap[1] = swap[1], swap[0]
    cyc = [I[(i + 1) % n] for i in range(n)]
    gens += [swap, cyc]
    if F.order > 2:
        d = [row[:] for row in I]
        d[0][0] = F.primitive_code
        gens.append(d)
    t = [row[:] for row in I]
    t[0][1] = F.one_code
    gens.append(t)
    return gens


def _frobenius_map(F: Field) -> Callable[[tuple[int, ...]], tuple[int, ...]]:
    return lambda x: tuple(F.frobenius_code(c, 1) for c in x)


def _point_perm(coords: Sequence[tuple[int, ...]], fn) -> np.ndarray:
    index = {c: i for i, c in enumerate(coords)}
    return np.array([index[fn(c)] for c in coords], dtype=np.int32)


def _projective_perms(space: PointLineGeometry, mats: list[Matrix], semilinear: bool) -> list[np.ndarray]:
    F = space.field
    out = [_point_perm(space.coords, lambda x, M=M: _normalize(F, _vec_mat(F, x, M))) for M in mats]
    if semilinear and F.k > 1:
        out.append(_point_perm(space.coords, _frobenius_map(F)))
    return out


def _affine_perms(space: PointLineGeometry, mats: list[Matrix], semilinear: bool) -> list[np.ndarray]:
    F = space.field
    n = len(space.coords[0])
    out = [_point_perm(space.coords, lambda x, M=M: _vec_mat(F, x, M)) for M in mats]
    e0 = (F.one_code,) + (0,) * (n - 1)
    add = F.add_table
    out.append(_point_perm(space.coords, lambda x: tuple(add[a][b] for a, b in zip(x, e0))))
    if semilinear and F.k > 1:
        out.append(_point_perm(space.coords, _frobenius_map(F)))
    return out


def _conj(F: Field, q: int, a: int) -> int:
    return F.pow_code(a, q)


def unitary_generators(F: Field, q: int) -> list[Matrix]:
    """Matrices preserving x0^(q+1) + x1^(q+1) + x2^(q+1) over F = GF(q^2)."""
    I = _identity(F, 3)
    gens = []
    swap = [row[:] for row in I]
    swap[0], swap[1] = swap[1], swap[0]
    gens.append(swap)
    gens.append([I[1], I[2], I[0]])
    lam = F.pow_code(F.primitive_code, q - 1)  # lam^(q+1) = 1
    d = [row[:] for row in I]
    d[0][0] = lam
    gens.append(d)
    gens.append(_dense_unitary(F, q))
    return gens


def _herm(F: Field, q: int, x, y) -> int:
    add, mul = F.add_table, F.mul_table
    acc = 0
    for a, b in zip(x, y):
        acc = add[acc][mul[a][_conj(F, q, b)]]
    return acc


def _dense_unitary(F: Field, q: int) -> Matrix:
    """First unitary matrix (lexicographic rows) whose first row has no zero entry."""
    unit = [x for x in itertools.product(range(F.order), repeat=3)
            if _herm(F, q, x, x) == F.one_code]
    for r1 in unit:
        if 0 in r1:
            continue
        for r2 in unit:
            if _herm(F, q, r1, r2) != 0:
                continue
            for r3 in unit:
                if _herm(F, q, r1, r3) == 0 and _herm(F, q, r2, r3) == 0:
                    return [list(r1), list(r2), list(r3)]
    raise AssertionError("no unitary matrix with a dense first row")


def _is_unitary(F: Field, q: int, M: Matrix) -> bool:
    add, mul = F.add_table, F.mul_table
    for i in range(3):
        for j in range(3):
            acc = 0
            for k in range(3):
                acc = add[acc][mul[M[i][k]][_conj(F, q, M[j][k])]]
            if acc != (F.one_code if i == j else 0):
                return False
    return True


def classification_group(case: str, *params: int, space: PointLineGeometry | None = None) -> PermGroup:
    """The named group acting on the point ids of the matching space.

    symmetric v / pgl n q / pgammal n q / agl n q / agammal n q / pgammau q.
    """
    if case == "symmetric":
        (v,) = params
        space = space or complete_graph(v)
        gens = [np.array([1, 0] + list(range(2, v)), dtype=np.int32),
                np.array(list(range(1, v)) + [0], dtype=np.int32)]
        return PermGroup(v, gens)
    if case in ("pgl", "pgammal"):
        n, q = params
        space = space or projective_space(n, q)
        gens = _projective_perms(space, linear_generators(space.field, n + 1), case == "pgammal")
        return PermGroup(space.v, gens)
    if case in ("agl", "agammal"):
        n, q = params
        space = space or affine_space(n, q)
        gens = _affine_perms(space, linear_generators(space.field, n), case == "agammal")
        return PermGroup(space.v, gens)
    if case == "pgammau":
        (q,) = params
        space = space or hermitian_unital(q)
        F = space.field
        mats = unitary_generators(F, q)
        assert all(_is_unitary(F, q, M) for M in mats)
        gens = _projective_perms(space, mats, semilinear=True)
        return PermGroup(space.v, gens)
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")


def space_for_case(case: str, *params: int) -> PointLineGeometry:
    if case == "symmetric":
        return complete_graph(*params)
    if case in ("pgl", "pgammal"):
        return projective_space(*params)
    if case in ("agl", "agammal"):
        return affine_space(*params)
    if case == "pgammau":
        return hermitian_unital(*params)
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
