"""Automorphisms and correlations of incidence systems by individualization-refinement.

Colourings are refined jointly on a (source, target) pair: each round hashes
every vertex by its colour and the multiset of its neighbours' colours, and
new colour ids are ranks of those keys over both sides together, so ids
mean the same thing on each side.  A mismatch of colour-class sizes prunes
the branch.  Hash collisions can only make the partition coarser, never
wrong, because every leaf map is checked edge by edge before it is used.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .incidence import IncidenceSystem
from .perm import PermGroup, StabChain, inverse, orbit, orbits

DEFAULT_MAX_ELEMENTS = 5000


class ScaleError(RuntimeError):
    """The system is larger than the configured element bound."""


def max_elements() -> int:
    val = os.environ.get("TRIGEOM_MAX_ELEMENTS")
    return int(val) if val else DEFAULT_MAX_ELEMENTS


class _Graph:
    def __init__(self, sys: IncidenceSystem, seed: int = 20240101):
        self.n = n = len(sys)
        self.adj = sys.adjacency
        e = sys.edges
        codes = np.concatenate([e[:, 0] * n + e[:, 1], e[:, 1] * n + e[:, 0]])
        self.codes = np.sort(codes)
        self.src = np.concatenate([e[:, 0], e[:, 1]])
        self.dst = np.concatenate([e[:, 1], e[:, 0]])
        rng = np.random.default_rng(seed)
        # weights for colour ids; ids never exceed 2n
        self.w1 = rng.integers(1, 2**31, size=2 * n + 2, dtype=np.int64)
        self.w2 = rng.integers(1, 2**31, size=2 * n + 2, dtype=np.int64)

    def is_automorphism(self, p: np.ndarray) -> bool:
        n = self.n
        img = np.sort(p[self.src].astype(np.int64) * n + p[self.dst])
        return bool(np.array_equal(img, self.codes))

    def refine(self, cs: np.ndarray, ct: np.ndarray):
        """Jointly refine to a stable pair, or None if the sides disagree."""
        n = self.n
        ncol = int(max(cs.max(), ct.max())) + 1 if n else 0
        while True:
            keys = []
            for c in (cs, ct):
                keys.append((c, self.adj @ self.w1[c], self.adj @ self.w2[c]))
            c_all = np.concatenate([keys[0][0], keys[1][0]])
            h1 = np.concatenate([keys[0][1], keys[1][1]])
            h2 = np.concatenate([keys[0][2], keys[1][2]])
            order = np.lexsort((h2, h1, c_all))
            sc, s1, s2 = c_all[order], h1[order], h2[order]
            new = np.empty(2 * n, dtype=np.int64)
            step = np.ones(2 * n, dtype=np.int64)
            step[0] = 0
            step[1:] = (sc[1:] != sc[:-1]) | (s1[1:] != s1[:-1]) | (s2[1:] != s2[:-1])
            new[order] = np.cumsum(step)
            ns, nt = new[:n], new[n:]
            k = int(new.max()) + 1
            if not np.array_equal(np.bincount(ns, minlength=k), np.bincount(nt, minlength=k)):
                return None
            if k == ncol:
                return ns, nt
            cs, ct, ncol = ns, nt, k

    @staticmethod
    def individualize(c: np.ndarray, v: int) -> np.ndarray:
        c = c.copy()
        c[v] = int(c.max()) + 1
        return c

    @staticmethod
    def target_cell(c: np.ndarray) -> int | None:
        """Colour of the smallest non-singleton cell (ties: smallest colour)."""
        counts = np.bincount(c)
        cand = np.nonzero(counts > 1)[0]
        if len(cand) == 0:
            return None
        return int(cand[np.argmin(counts[cand])])

    def leaf_map(self, cs: np.ndarray, ct: np.ndarray) -> np.ndarray:
        p = np.empty(self.n, dtype=np.int32)
        p[np.argsort(cs, kind="stable")] = np.argsort(ct, kind="stable")
        return p

    def find_iso(self, cs, ct, stats: dict | None = None) -> np.ndarray | None:
        """Complete backtracking search for a colour-preserving automorphism cs -> ct."""
        r = self.refine(cs, ct)
        if stats is not None:
            stats["nodes"] = stats.get("nodes", 0) + 1
        if r is None:
            return None
        cs, ct = r
        col = self.target_cell(cs)
        if col is None:
            p = self.leaf_map(cs, ct)
            return p if self.is_automorphism(p) else None
        v = int(np.nonzero(cs == col)[0][0])
        cs2 = self.individualize(cs, v)
        for w in np.nonzero(ct == col)[0]:
            p = self.find_iso(cs2, self.individualize(ct, int(w)), stats)
            if p is not None:
                return p
        return None


@dataclass
class AutResult:
    group: PermGroup
    order: int
    base: list[int]
    orbit_lengths: list[int]
    nodes: int = 0


def automorphism_group(sys: IncidenceSystem, colors: Sequence[int] | None = None,
                       known: Sequence[np.ndarray] = (), bound: int | None = None) -> AutResult:
    """Generators and order of the colour-preserving automorphism group.

    ``colors`` defaults to the type map.  ``known`` may hold automorphisms
    already in hand; they only prune the top level of the search.
    """
    bound = max_elements() if bound is None else bound
    if len(sys) > bound:
        raise ScaleError(f"{len(sys)} elements exceed the bound {bound}")
    g = _Graph(sys)
    n = g.n
    c0 = np.asarray(sys.type_of if colors is None else colors, dtype=np.int64)
    stats: dict = {}
    # the leftmost path: individualize the first vertex of the target cell at each level
    path = []
    c = g.refine(c0, c0)[0]
    while True:
        col = g.target_cell(c)
        if col is None:
            break
        cell = np.nonzero(c == col)[0]
        v = int(cell[0])
        path.append((c, v, cell))
        c = g.refine(g.individualize(c, v), g.individualize(c, v))[0]
    gens: list[np.ndarray] = []
    lengths = []
    for level in range(len(path) - 1, -1, -1):
        c, v, cell = path[level]
        pool = gens + ([np.asarray(k, dtype=np.int32) for k in known] if level == 0 else [])
        orb = set(orbit(pool, v))
        cv = g.individualize(c, v)
        for w in cell.tolist():
            if w in orb:
                continue
            p = g.find_iso(cv, g.individualize(c, w), stats)
            if p is not None:
                gens.append(p)
                pool.append(p)
                orb = set(orbit(pool, v))
        if level == 0:
            gens = pool
        lengths.append(len(orb))
    lengths.reverse()
    order = 1
    for x in lengths:
        order *= x
    group = PermGroup(n, gens)
    return AutResult(group, order, [v for _, v, _ in path], lengths, stats.get("nodes", 0))


def type_relabel(sys: IncidenceSystem, sigma: Sequence[int]) -> np.ndarray:
    """Target colouring for correlations inducing ``sigma`` on types."""
    sinv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        sinv[s] = i
    return np.array([sinv[t] for t in sys.type_of], dtype=np.int64)


def find_correlation(sys: IncidenceSystem, sigma: Sequence[int],
                     aut_gens: Sequence[np.ndarray] = ()) -> np.ndarray | None:
    """A correlation whose type permutation is ``sigma``, or None.

    Top-level candidates are reduced to one per orbit of ``aut_gens``, which
    must be type-preserving automorphisms.
    """
    g = _Graph(sys)
    cs = np.asarray(sys.type_of, dtype=np.int64)
    ct = type_relabel(sys, sigma)
    r = g.refine(cs, ct)
    if r is None:
        return None
    cs, ct = r
    col = g.target_cell(cs)
    if col is None:
        p = g.leaf_map(cs, ct)
        return p if g.is_automorphism(p) else None
    v = int(np.nonzero(cs == col)[0][0])
    cs2 = g.individualize(cs, v)
    cand = np.nonzero(ct == col)[0].tolist()
    if aut_gens:
        reps, seen = [], set()
        gens = [np.asarray(a) for a in aut_gens]
        for w in cand:
            if w not in seen:
                reps.append(w)
                seen.update(orbit(gens, w))
        cand = reps
    for w in cand:
        p = g.find_iso(cs2, g.individualize(ct, w))
        if p is not None:
            return p
    return None


def induced_type_perm(sys: IncidenceSystem, p: Sequence[int]) -> tuple[int, ...] | None:
    """The permutation of types induced by ``p``, or None if types are not mapped consistently."""
    sigma: dict[int, int] = {}
    for x, y in enumerate(p):
        t, u = sys.type_of[x], sys.type_of[int(y)]
        if sigma.setdefault(t, u) != u:
            return None
    out = tuple(sigma.get(i, i) for i in range(sys.rank))
    return out if sorted(out) == list(range(sys.rank)) else None


def is_correlation(sys: IncidenceSystem, p: Sequence[int]) -> bool:
    p = np.asarray(p)
    if len(p) != len(sys) or not np.array_equal(np.sort(p), np.arange(len(sys))):
        return False
    if induced_type_perm(sys, p) is None:
        return False
    return _Graph(sys).is_automorphism(p.astype(np.int32))


@dataclass
class CorResult:
    aut: AutResult
    realized: dict[tuple[int, ...], np.ndarray] = field(default_factory=dict)

    @property
    def aut_order(self) -> int:
        return self.aut.order

    @property
    def order(self) -> int:
        return self.aut.order * len(self.realized)

    @property
    def has_duality(self) -> bool:
        return any(_is_odd(s) for s in self.realized)

    @property
    def has_triality(self) -> bool:
        return any(_is_3cycle(s) for s in self.realized)

    def generators(self) -> list[np.ndarray]:
        return list(self.aut.group.generators) + [p for s, p in sorted(self.realized.items())
                                                   if s != tuple(range(len(s)))]

    def group(self) -> PermGroup:
        return PermGroup(self.aut.group.degree, self.generators())


def _is_odd(s: Sequence[int]) -> bool:
    inv = sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])
    return inv % 2 == 1


def _is_3cycle(s: Sequence[int]) -> bool:
    return len(s) == 3 and all(s[i] != i for i in range(3))


def correlation_group(sys: IncidenceSystem, aut: AutResult | None = None,
                      bound: int | None = None) -> CorResult:
    """Aut plus one representative correlation for every realised type permutation.

    The realised type permutations form a subgroup R of Sym(types), so
    |Cor| = |Aut| * |R|.
    """
    if aut is None:
        aut = automorphism_group(sys, bound=bound)
    res = CorResult(aut)
    ident = tuple(range(sys.rank))
    res.realized[ident] = np.arange(len(sys), dtype=np.int32)
    for sigma in itertools.permutations(range(sys.rank)):
        if sigma == ident:
            continue
        if any(sys.type_sizes[i] != sys.type_sizes[sigma[i]] for i in range(sys.rank)):
            continue
        p = find_correlation(sys, sigma, aut.group.generators)
        if p is not None:
            res.realized[sigma] = p
    return res
