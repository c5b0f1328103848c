import math

import numpy as np
import pytest

from trigeom.incidence import IncidenceSystem
from trigeom.search import (ScaleError, automorphism_group, correlation_group, find_correlation,
                            induced_type_perm, is_correlation, max_elements)
from trigeom.spaces import affine_space, complete_graph, cycle_geometry, near_pencil, projective_space
from trigeom.triangle import triangle_complex

from . import oracles


def relabel(sys: IncidenceSystem, p: np.ndarray) -> IncidenceSystem:
    """Copy of ``sys`` with element x renamed p[x]."""
    inv = np.argsort(p)
    return IncidenceSystem(sys.types, tuple(sys.type_of[int(inv[y])] for y in range(len(sys))),
                           tuple(tuple(int(p[z]) for z in sys.neighbors[int(inv[y])]) for y in range(len(sys))))


@pytest.mark.parametrize("sp", [cycle_geometry(5), complete_graph(4), near_pencil(5)],
                         ids=lambda s: s.name)
def test_automorphisms_match_brute_force(sp):
    brute = oracles.automorphisms_brute(sp.sys)
    res = automorphism_group(sp.sys)
    assert res.order == len(brute) == res.group.order()
    assert all(tuple(g.tolist()) in set(brute) for g in res.group.generators)


@pytest.mark.parametrize("sp,order", [
    (projective_space(2, 2), 168), (projective_space(2, 3), 5616), (affine_space(2, 3), 432),
    (complete_graph(5), 120), (affine_space(2, 4), 5760),
], ids=lambda x: getattr(x, "name", str(x)))
def test_source_group_orders(sp, order):
    assert automorphism_group(sp.sys).order == order


def test_orbit_lengths_and_stabilizer_chain_agree():
    tc = triangle_complex(projective_space(2, 2))
    res = automorphism_group(tc.sys)
    assert math.prod(res.orbit_lengths) == res.order == 168
    assert res.group.order() == 168


def test_invariant_under_relabelling():
    s = triangle_complex(complete_graph(4)).sys
    rng = np.random.default_rng(7)
    p = rng.permutation(len(s))
    t = relabel(s, p)
    assert automorphism_group(t).order == automorphism_group(s).order == 24


def test_correlations_of_a_projective_plane():
    s = projective_space(2, 3).sys
    cor = correlation_group(s)
    assert cor.has_duality
    d = cor.realized[(1, 0)]
    assert is_correlation(s, d)
    assert induced_type_perm(s, d) == (1, 0)
    assert cor.order == 2 * 5616


def test_affine_plane_has_no_duality():
    s = affine_space(2, 3).sys
    assert find_correlation(s, (1, 0)) is None


def test_rejects_non_correlations():
    s = projective_space(2, 2).sys
    assert not is_correlation(s, np.arange(len(s))[::-1])
    assert not is_correlation(s, np.zeros(len(s), dtype=int))


def test_scale_bound(monkeypatch):
    monkeypatch.setenv("TRIGEOM_MAX_ELEMENTS", "10")
    assert max_elements() == 10
    with pytest.raises(ScaleError):
        automorphism_group(projective_space(2, 2).sys)
    monkeypatch.delenv("TRIGEOM_MAX_ELEMENTS")
    assert max_elements() == 5000
