import itertools
import warnings

import numpy as np
import pytest

from trigeom.incidence import is_geometry
from trigeom.search import automorphism_group, correlation_group, is_correlation
from trigeom.spaces import (affine_space, complete_graph, count_noncollinear_triples, cycle_geometry,
                            hermitian_unital, near_pencil, projective_space)
from trigeom.triangle import (Correlation, CorrelationError, ProjectionError, canonical_triality,
                              chamber_to_triple, kv_beta, lift_automorphism, lift_duality,
                              project_correlation, reconstruct, triangle_complex, triple_to_chamber)

from . import oracles
from .conftest import cor, cx

SMALL = ["pg 2 2", "ag 2 3", "kv 4", "kv 5", "uh 2", "kv 3"]


@pytest.mark.parametrize("text", SMALL)
def test_incidence_matches_definition(text):
    sp, tc = cx(text)
    elems, pairs = oracles.triangle_incidences(sp)
    got = set()
    for x, nb in enumerate(tc.sys.neighbors):
        for y in nb:
            got.add(frozenset({tc.decode(x), tc.decode(y)}))
    assert got == pairs
    assert sorted(tc.decode(x) for x in range(len(tc.sys))) == sorted(elems)


@pytest.mark.parametrize("text", SMALL)
def test_chambers_are_triangles(text):
    sp, tc = cx(text)
    chs = tc.sys.chambers
    assert len(chs) == count_noncollinear_triples(sp)
    seen = set()
    for ch in chs:
        t = chamber_to_triple(tc, ch)
        assert triple_to_chamber(tc, t) == tuple(sorted(ch))
        seen.add(t)
    assert len(seen) == len(chs)


def test_sizes_of_ag23():
    sp, tc = cx("ag 2 3")
    assert len(tc.sys) == 108 and tc.sys.type_sizes == (36, 36, 36)
    assert len(tc.sys.chambers) == 432


def test_element_ids():
    sp, tc = cx("pg 2 2")
    assert tc.F == 21
    p, L = tc.flags[5]
    assert tc.element(p, L, 2) == 21 + 5
    assert tc.decode(21 + 5) == (p, L, 2)


def test_triple_errors():
    sp, tc = cx("pg 2 2")
    with pytest.raises(ValueError):
        triple_to_chamber(tc, (0, 0, 1))
    line = sorted(sp.line_sets[0])
    with pytest.raises(ValueError):
        triple_to_chamber(tc, line)


@pytest.mark.parametrize("text", SMALL + ["pg 2 3", "ag 2 4"])
def test_canonical_triality(text):
    _, tc = cx(text)
    tau = canonical_triality(tc)
    assert tau.type_perm == (1, 2, 0)
    assert tau.kind == "triality"
    assert tau.power(3).is_identity() and not tau.power(1).is_identity()
    assert is_correlation(tc.sys, tau.perm)


def test_non_linear_input_warns_and_is_not_a_geometry():
    with pytest.warns(UserWarning):
        tc = triangle_complex(cycle_geometry(4))
    assert not tc.linear_input
    assert not is_geometry(tc.sys)


def test_lift_is_a_homomorphism():
    sp, tc = cx("ag 2 3")
    gens = [np.asarray(g[:sp.v]) for g in automorphism_group(sp.sys).group.generators]
    for g, h in itertools.product(gens, repeat=2):
        gh = h[g]  # apply g, then h
        lhs = lift_automorphism(tc, gh)
        rhs = lift_automorphism(tc, g).then(lift_automorphism(tc, h))
        assert lhs == rhs
        assert lhs.type_perm == (0, 1, 2)


def test_lift_rejects_non_automorphisms():
    sp, tc = cx("pg 2 2")
    with pytest.raises(CorrelationError):
        lift_automorphism(tc, [1, 0] + list(range(2, sp.v)))
    with pytest.raises(CorrelationError):
        lift_duality(tc, np.arange(sp.v + sp.b))


def test_lifted_duality_swaps_two_types():
    sp, tc = cx("pg 2 2")
    alpha = correlation_group(sp.sys).realized[(1, 0)]
    d = lift_duality(tc, alpha)
    assert d.kind == "duality" and d.type_perm == (0, 2, 1)


def test_kv_beta():
    _, tc = cx("kv 4")
    b = kv_beta(tc)
    assert b.type_perm == (0, 2, 1)
    assert b.power(2).is_identity()
    with pytest.raises(ValueError):
        kv_beta(cx("pg 2 2")[1])


@pytest.mark.parametrize("text", ["pg 2 2", "pg 2 3", "ag 2 3", "ag 2 4", "uh 2", "kv 4", "kv 5"])
def test_every_correlation_generator_projects_and_reconstructs(text):
    _, tc = cx(text)
    tau = canonical_triality(tc)
    res = cor(text)
    gens = [Correlation.of(tc.sys, g) for g in res.generators()] + [tau]
    for phi in gens:
        for psi in (phi, phi.then(tau), tau.inverse().then(phi)):
            proj = project_correlation(tc, psi)
            assert reconstruct(tc, proj) == psi


def test_projection_refusals():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        tc = triangle_complex(near_pencil(5))
    tau = canonical_triality(tc)
    with pytest.raises(ProjectionError):
        project_correlation(tc, tau)
    _, tc3 = cx("kv 3")
    with pytest.raises(ProjectionError):
        project_correlation(tc3, canonical_triality(tc3))


def test_correlation_json_and_group_ops():
    _, tc = cx("pg 2 2")
    tau = canonical_triality(tc)
    data = tau.to_json()
    assert data["type_perm"] == [2, 3, 1]
    back = Correlation.from_json(data)
    assert back == tau and back.type_perm == tau.type_perm
    assert tau.inverse().then(tau).is_identity()
    assert tau.order() == 3
    with pytest.raises(CorrelationError):
        Correlation.of(tc.sys, np.arange(len(tc.sys))[::-1])
