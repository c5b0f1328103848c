import numpy as np
import pytest

from trigeom.groups import (_is_unitary, classification_group, linear_generators, space_for_case,
                            unitary_generators)
from trigeom.harness import triple_orbit
from trigeom.field import gf
from trigeom.spaces import count_noncollinear_triples


def gl_order(n, q):
    out = 1
    for i in range(n):
        out *= q ** n - q ** i
    return out


def frob_degree(q):
    k, p = 0, q
    while p > 1:
        for r in range(2, p + 1):
            if p % r == 0:
                p //= r
                break
        k += 1
    return k


CASES = [
    ("symmetric", (5,), 120),
    ("pgl", (2, 2), gl_order(3, 2) // 1),
    ("pgl", (2, 3), gl_order(3, 3) // 2),
    ("pgl", (2, 4), gl_order(3, 4) // 3),
    ("pgammal", (2, 4), gl_order(3, 4) // 3 * 2),
    ("pgl", (3, 2), gl_order(4, 2)),
    ("agl", (2, 3), 9 * gl_order(2, 3)),
    ("agl", (2, 4), 16 * gl_order(2, 4)),
    ("agammal", (2, 4), 16 * gl_order(2, 4) * 2),
    ("agl", (2, 5), 25 * gl_order(2, 5)),
    ("pgammau", (2,), 8 * 9 * 3 * 2),
    ("pgammau", (3,), 27 * 28 * 8 * 2),
    ("pgammau", (4,), 64 * 65 * 15 * 4),
]


@pytest.mark.parametrize("case,params,order", CASES, ids=lambda x: str(x))
def test_orders_match_formulas(case, params, order):
    assert classification_group(case, *params).order() == order


@pytest.mark.parametrize("case,params", [(c, p) for c, p, _ in CASES if c != "pgammau" or p != (4,)],
                         ids=lambda x: str(x))
def test_generators_preserve_lines(case, params):
    sp = space_for_case(case, *params)
    G = classification_group(case, *params, space=sp)
    for g in G.generators:
        sp.element_perm_from_points(g.tolist())  # raises if a line is not sent to a line


def test_unitary_generators_are_unitary():
    for q in (2, 3, 4):
        F = gf(q * q)
        assert all(_is_unitary(F, q, M) for M in unitary_generators(F, q))


def test_linear_generators_shape():
    F = gf(3)
    gens = linear_generators(F, 3)
    assert all(len(M) == 3 and len(M[0]) == 3 for M in gens)


@pytest.mark.parametrize("case,params,transitive", [
    ("symmetric", (5,), True), ("pgl", (2, 2), True), ("agl", (2, 3), True),
    ("pgammau", (2,), True), ("pgammau", (3,), False), ("pgl", (3, 2), True),
])
def test_triple_transitivity(case, params, transitive):
    sp = space_for_case(case, *params)
    G = classification_group(case, *params, space=sp)
    assert (triple_orbit(sp, G.generators) == count_noncollinear_triples(sp)) == transitive


def test_unknown_case():
    with pytest.raises(ValueError):
        classification_group("psl", 2, 3)
