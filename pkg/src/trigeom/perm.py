"""Permutations as integer arrays, orbits, and a deterministic Schreier-Sims.

Convention: ``p[x]`` is the image of ``x``; ``compose(p, q)`` applies ``p``
first and then ``q`` (so ``compose(p, q)[x] == q[p[x]]``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

DTYPE = np.int32


def as_perm(images: Sequence[int]) -> np.ndarray:
    p = np.asarray(images, dtype=DTYPE)
    if p.ndim != 1 or not np.array_equal(np.sort(p), np.arange(len(p))):
        raise ValueError("not a permutation")
    return p


def identity(n: int) -> np.ndarray:
    return np.arange(n, dtype=DTYPE)


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """p first, then q."""
    return q[p]


def inverse(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    out[p] = np.arange(len(p), dtype=p.dtype)
    return out


def is_identity(p: np.ndarray) -> bool:
    return bool(np.array_equal(p, np.arange(len(p))))


def conjugate(h: np.ndarray, g: np.ndarray) -> np.ndarray:
    """g^-1 h g (apply g^-1, then h, then g)."""
    return g[h[inverse(g)]]


def power(p: np.ndarray, e: int) -> np.ndarray:
    out = identity(len(p))
    base = p if e >= 0 else inverse(p)
    e = abs(e)
    while e:
        if e & 1:
            out = compose(out, base)
        base = compose(base, base)
        e >>= 1
    return out


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    p = list(p)
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if len(p) else 1


def perm_sign(p: Sequence[int]) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(p)) % 2 else 1


# -- orbits --------------------------------------------------------------------

def _act_natural(g, x):
    return int(g[x])


def _act_tuple(g, x):
    return tuple(int(g[y]) for y in x)


def _act_set(g, x):
    return frozenset(int(g[y]) for y in x)


ACTIONS: dict[str, Callable] = {
    "natural": _act_natural,
    "tuplewise": _act_tuple,
    "setwise": _act_set,
}


def orbit(gens: Iterable[np.ndarray], seed: Hashable, action: str | Callable = "natural") -> list:
    """Breadth-first closure of ``seed`` under the generators."""
    act = ACTIONS[action] if isinstance(action, str) else action
    gens = [np.asarray(g) for g in gens]
    if action == "tuplewise" or action == "setwise":
        gens = [g.tolist() for g in gens]
    seen = {seed}
    out = [seed]
    queue = deque([seed])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = act(g, x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
    return out


def orbits(gens: Sequence[np.ndarray], n: int) -> list[list[int]]:
    """Orbit partition of {0..n-1}, each orbit sorted, ordered by minimum."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x, y in enumerate(np.asarray(g).tolist()):
            a, b = find(x), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


# -- stabilizer chains -------------------------------------------------------

@dataclass
class _Level:
    point: int
    gens: list[np.ndarray]
    transversal: dict[int, np.ndarray] = field(default_factory=dict)
    inverses: dict[int, np.ndarray] = field(default_factory=dict)

    def rebuild(self, n: int):
        t = {self.point: identity(n)}
        queue = deque([self.point])
        while queue:
            x = queue.popleft()
            ux = t[x]
            for s in self.gens:
                y = int(s[x])
                if y not in t:
                    t[y] = compose(ux, s)
                    queue.append(y)
        self.transversal = t
        self.inverses = {x: inverse(u) for x, u in t.items()}


class StabChain:
    """Base and strong generating set built by the deterministic Schreier-Sims method.

    New base points are always the smallest point moved by the sifted
    residue, so the chain depends only on the input generators.
    """

    def __init__(self, n: int, gens: Iterable[np.ndarray], base: Sequence[int] = ()):
        self.n = n
        self.levels: list[_Level] = []
        self.strong: list[np.ndarray] = []
        for b in base:
            self.levels.append(_Level(int(b), []))
        gens = [np.asarray(g, dtype=DTYPE) for g in gens if not is_identity(np.asarray(g))]
        for g in gens:
            self._add_strong(g)
        self._complete()

    # strong generator bookkeeping
    def _add_strong(self, h: np.ndarray):
        self.strong.append(h)
        if all(int(h[lv.point]) == lv.point for lv in self.levels):
            moved = int(np.nonzero(h != np.arange(self.n))[0][0])
            self.levels.append(_Level(moved, []))
        for i, lv in enumerate(self.levels):
            if all(int(h[self.levels[j].point]) == self.levels[j].point for j in range(i)):
                lv.gens.append(h)

    def _strip(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = int(g[lv.point])
            if x not in lv.transversal:
                return g, i
            g = lv.inverses[x][g]
        return g, len(self.levels)

    def _complete(self):
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            lv.rebuild(self.n)
            added = None
            for x, ux in list(lv.transversal.items()):
                for s in lv.gens:
                    y = int(s[x])
                    sch = lv.inverses[y][s[ux]]
                    h, j = self._strip(sch, i + 1)
                    if j < len(self.levels) or not is_identity(h):
                        self._add_strong(h)
                        added = j
                        break
                if added is not None:
                    break
            if added is None:
                i -= 1
            else:
                # level j gained a generator; levels i+1..j-1 did too and are redone on the way down
                i = added

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def orbit_lengths(self) -> list[int]:
        return [len(lv.transversal) for lv in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_lengths())

    def contains(self, g: np.ndarray) -> bool:
        g = np.asarray(g, dtype=DTYPE)
        if len(g) != self.n:
            return False
        h, j = self._strip(g, 0)
        return j == len(self.levels) and is_identity(h)


@dataclass(eq=False)
class PermGroup:
    degree: int
    generators: list[np.ndarray]

    def __post_init__(self):
        self.generators = [as_perm(g) for g in self.generators]
        for g in self.generators:
            if len(g) != self.degree:
                raise ValueError("generator degree mismatch")
        self._chain: StabChain | None = None

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            self._chain = StabChain(self.degree, self.generators)
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g) -> bool:
        return self.chain.contains(g)

    def orbit(self, seed, action="natural") -> list:
        return orbit(self.generators, seed, action)

    def orbits(self) -> list[list[int]]:
        return orbits(self.generators, self.degree)

    def elements(self, limit: int = 100000) -> list[tuple[int, ...]]:
        """Brute-force closure; refuses groups larger than ``limit``."""
        gens = [g.tolist() for g in self.generators]
        start = tuple(range(self.degree))
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise ValueError(f"group has more than {limit} elements")
                    queue.append(y)
        return sorted(seen)


def group_order(group: PermGroup) -> int:
    return group.order()


def normality_check(group: PermGroup, subgroup: PermGroup) -> bool:
    """True iff every generator of ``subgroup`` conjugated by every generator of ``group`` stays inside."""
    for g in group.generators:
        for h in subgroup.generators:
            if conjugate(h, g) not in subgroup:
                return False
    return True
