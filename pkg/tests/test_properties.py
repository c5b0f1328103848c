"""Property tests over random group words, flags, triples and relabellings."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from trigeom import incidence as inc
from trigeom.search import automorphism_group, is_correlation
from trigeom.spaces import noncollinear_triples
from trigeom.triangle import (Correlation, canonical_triality, chamber_to_triple, lift_automorphism,
                              project_correlation, reconstruct, triple_to_chamber)

from .conftest import cor, cx

SMALL = ["pg 2 2", "pg 2 3", "ag 2 3", "ag 2 4", "kv 4", "kv 5", "uh 2"]
PROJECTABLE = ["pg 2 2", "pg 2 3", "ag 2 3", "ag 2 4", "kv 4", "kv 5", "uh 2"]
settings.register_profile("trigeom", deadline=None, max_examples=60)
settings.load_profile("trigeom")


def word(gens, idx):
    out = None
    for i in idx:
        g = gens[i % len(gens)]
        out = g if out is None else out.then(g)
    return out


@given(st.sampled_from(SMALL + ["kv 3", "pg 3 2"]))
def test_tau_cubed_is_identity(text):
    _, tc = cx(text)
    tau = canonical_triality(tc)
    assert tau.power(3).is_identity()
    assert is_correlation(tc.sys, tau.perm)


@given(st.sampled_from(SMALL), st.data())
def test_triple_chamber_roundtrip(text, data):
    sp, tc = cx(text)
    triples = list(noncollinear_triples(sp))
    t = data.draw(st.sampled_from(triples))
    ch = triple_to_chamber(tc, t)
    assert tc.sys.is_flag(ch) and len(ch) == 3
    assert chamber_to_triple(tc, ch) == t


@given(st.sampled_from(SMALL), st.data())
def test_triality_rotates_triples(text, data):
    # tau sends the chamber of (p1, p2, p3) to the chamber of (p3, p1, p2)
    sp, tc = cx(text)
    t = data.draw(st.sampled_from(list(noncollinear_triples(sp))))
    tau = canonical_triality(tc)
    img = tuple(int(tau.perm[x]) for x in triple_to_chamber(tc, t))
    assert chamber_to_triple(tc, img) == (t[2], t[0], t[1])


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 50), min_size=1, max_size=6),
       st.lists(st.integers(0, 50), min_size=1, max_size=6))
def test_lift_is_a_homomorphism(text, a, b):
    sp, tc = cx(text)
    gens = [np.asarray(g[:sp.v]) for g in automorphism_group(sp.sys).group.generators]

    def pt(idx):
        out = np.arange(sp.v)
        for i in idx:
            out = gens[i % len(gens)][out]
        return out

    g, h = pt(a), pt(b)
    lhs = lift_automorphism(tc, h[g])
    rhs = lift_automorphism(tc, g).then(lift_automorphism(tc, h))
    assert lhs == rhs


@given(st.sampled_from(PROJECTABLE), st.lists(st.integers(0, 50), min_size=1, max_size=5))
def test_project_then_reconstruct(text, idx):
    _, tc = cx(text)
    gens = [Correlation.of(tc.sys, g, check=False) for g in cor(text).generators()]
    gens.append(canonical_triality(tc))
    phi = word(gens, idx)
    proj = project_correlation(tc, phi)
    assert reconstruct(tc, proj) == phi
    assert proj.k in (0, 1, 2)


@given(st.sampled_from(["pg 2 2", "ag 2 3", "kv 5"]), st.data())
def test_residue_composition(text, data):
    _, tc = cx(text)
    s = tc.sys
    x = data.draw(st.integers(0, len(s) - 1))
    r1 = inc.residue(s, [x])
    y = data.draw(st.integers(0, len(r1) - 1))
    nested = inc.residue(r1, [y])
    direct = inc.residue(s, [x, r1.origin[y]])
    assert nested.origin == direct.origin and nested.neighbors == direct.neighbors


@given(st.sampled_from(["pg 2 2", "kv 4", "ag 2 3"]), st.integers(0, 2 ** 32 - 1))
def test_automorphism_order_is_relabelling_invariant(text, seed):
    _, tc = cx(text)
    s = tc.sys
    p = np.random.default_rng(seed).permutation(len(s))
    inv = np.argsort(p)
    t = inc.IncidenceSystem(s.types, tuple(s.type_of[int(inv[y])] for y in range(len(s))),
                            tuple(tuple(int(p[z]) for z in s.neighbors[int(inv[y])]) for y in range(len(s))))
    assert automorphism_group(t).order == cor(text).aut_order


@given(st.sampled_from(SMALL), st.lists(st.integers(0, 50), min_size=1, max_size=5))
def test_correlation_json_roundtrip(text, idx):
    _, tc = cx(text)
    gens = [Correlation.of(tc.sys, g, check=False) for g in cor(text).generators()]
    phi = word(gens + [canonical_triality(tc)], idx)
    back = Correlation.from_json(phi.to_json())
    assert back == phi and back.type_perm == phi.type_perm
