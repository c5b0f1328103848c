"""Incidence systems: flags, residues, connectivity, firmness and diagrams.

An :class:`IncidenceSystem` stores only cross-type incidences; every element
is implicitly incident to itself.  Element ids are dense integers and every
enumeration is returned in increasing id order so results are reproducible.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

INF = math.inf


class NotAGeometryError(ValueError):
    pass


class DisconnectedError(ValueError):
    pass


@dataclass(eq=False)
class IncidenceSystem:
    """Typed elements with a symmetric cross-type incidence relation.

    ``neighbors[x]`` is the sorted tuple of elements incident to ``x`` (other
    than ``x`` itself).  The constructor does not validate; call
    :func:`validate` for diagnostics.  ``origin`` maps ids back to a parent
    system when the instance is a residue.
    """

    types: tuple[str, ...]
    type_of: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()
    origin: tuple[int, ...] = ()

    def __post_init__(self):
        self.types = tuple(str(t) for t in self.types)
        self.type_of = tuple(self.type_of)
        self.neighbors = tuple(tuple(sorted(nb)) for nb in self.neighbors)
        if not self.labels:
            self.labels = tuple(str(x) for x in range(len(self.type_of)))
        if len(self.neighbors) != len(self.type_of) or len(self.labels) != len(self.type_of):
            raise ValueError("type map, neighbor lists and labels must have equal length")

    @classmethod
    def from_incidences(cls, types: Sequence[str], type_of: Sequence[int],
                        incidences: Iterable[tuple[int, int]],
                        labels: Sequence[str] = ()) -> IncidenceSystem:
        nbs: list[set[int]] = [set() for _ in type_of]
        for a, b in incidences:
            if a != b:
                nbs[a].add(b)
                nbs[b].add(a)
        return cls(tuple(types), tuple(type_of), tuple(tuple(sorted(s)) for s in nbs), tuple(labels))

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.type_of)

    @property
    def rank(self) -> int:
        return len(self.types)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nb) for nb in self.neighbors)

    def incident(self, a: int, b: int) -> bool:
        return a == b or b in self.neighbor_sets[a]

    def elements_of_type(self, t: int) -> list[int]:
        return [x for x, tx in enumerate(self.type_of) if tx == t]

    @cached_property
    def type_sizes(self) -> tuple[int, ...]:
        c = Counter(self.type_of)
        return tuple(c.get(i, 0) for i in range(self.rank))

    def flag_type(self, flag: Iterable[int]) -> frozenset[int]:
        return frozenset(self.type_of[x] for x in flag)

    def is_flag(self, flag: Iterable[int]) -> bool:
        flag = list(flag)
        if len({self.type_of[x] for x in flag}) != len(flag):
            return False
        return all(self.incident(a, b) for i, a in enumerate(flag) for b in flag[i + 1:])

    @cached_property
    def edges(self) -> np.ndarray:
        """Incidences as an (m, 2) array with the lower id first, sorted."""
        pairs = [(a, b) for a, nb in enumerate(self.neighbors) for b in nb if a < b]
        return np.array(pairs, dtype=np.int64).reshape(-1, 2)

    @cached_property
    def adjacency(self) -> csr_matrix:
        n = len(self)
        e = self.edges
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    def common_neighbors(self, flag: Iterable[int]) -> set[int]:
        """Elements incident to every member of ``flag`` and not in it."""
        flag = list(flag)
        if not flag:
            return set(range(len(self)))
        out = set(self.neighbor_sets[flag[0]])
        for x in flag[1:]:
            out &= self.neighbor_sets[x]
        return out

    # -- cached derived data (the system is immutable) ---------------------

    @cached_property
    def maximal_flags(self) -> list[tuple[int, ...]]:
        return _maximal_flags(self)

    @cached_property
    def chambers(self) -> list[tuple[int, ...]]:
        r = self.rank
        return [f for f in self.maximal_flags if len(f) == r]

    @cached_property
    def is_geometry(self) -> bool:
        return len(self.chambers) == len(self.maximal_flags)


# -- validation --------------------------------------------------------------

def validate(sys: IncidenceSystem) -> list[str]:
    """Diagnostics for the incidence-system axioms; empty iff valid."""
    out = []
    for a, nb in enumerate(sys.neighbors):
        for b in nb:
            if not 0 <= b < len(sys):
                out.append(f"element {a} lists unknown neighbor {b}")
                continue
            if b == a:
                continue
            if sys.type_of[a] == sys.type_of[b] and a < b:
                out.append(f"same-type incidence {a} * {b} (type {sys.types[sys.type_of[a]]})")
            if a not in sys.neighbors[b]:
                out.append(f"asymmetric incidence: {b} in N({a}) but {a} not in N({b})")
    for i, t in enumerate(sys.types):
        if sys.type_sizes[i] == 0:
            out.append(f"type {t} has no elements")
    for x, t in enumerate(sys.type_of):
        if not 0 <= t < sys.rank:
            out.append(f"element {x} has unknown type index {t}")
    return out


# -- flags -------------------------------------------------------------------

def _maximal_flags(sys: IncidenceSystem) -> list[tuple[int, ...]]:
    nbs = sys.neighbor_sets
    out: list[tuple[int, ...]] = []

    def extend(flag: list[int], cand: set[int], common: set[int]):
        # cand: common neighbours with id > flag[-1]; common: all common neighbours
        if not common:
            out.append(tuple(flag))
            return
        for y in sorted(cand):
            flag.append(y)
            extend(flag, {z for z in cand if z > y} & nbs[y], common & nbs[y])
            flag.pop()

    for x in range(len(sys)):
        extend([x], {y for y in nbs[x] if y > x}, set(nbs[x]))
    out.sort()
    return out


def maximal_flags(sys: IncidenceSystem) -> list[tuple[int, ...]]:
    """Inclusion-maximal flags, sorted lexicographically by element ids."""
    return list(sys.maximal_flags)


def chambers(sys: IncidenceSystem) -> list[tuple[int, ...]]:
    return list(sys.chambers)


def flags_of_size(sys: IncidenceSystem, size: int) -> Iterator[tuple[int, ...]]:
    """All flags with ``size`` elements, in lexicographic order."""
    nbs = sys.neighbor_sets
    if size == 0:
        yield ()
        return

    def rec(flag: list[int], cand: set[int]):
        if len(flag) == size:
            yield tuple(flag)
            return
        for y in sorted(cand):
            flag.append(y)
            yield from rec(flag, {z for z in cand if z > y} & nbs[y])
            flag.pop()

    for x in range(len(sys)):
        yield from rec([x], {y for y in nbs[x] if y > x})


def is_geometry(sys: IncidenceSystem) -> bool:
    """True iff every maximal flag is a chamber."""
    return sys.is_geometry


def _require_geometry(sys: IncidenceSystem):
    if not sys.is_geometry:
        raise NotAGeometryError("incidence system is not a geometry")


# -- residues ----------------------------------------------------------------

def residue(sys: IncidenceSystem, flag: Iterable[int]) -> IncidenceSystem:
    """The system induced on elements incident to all of ``flag`` (flag excluded)."""
    flag = sorted(set(flag))
    if not sys.is_flag(flag):
        raise ValueError(f"{flag} is not a flag")
    ftypes = sys.flag_type(flag)
    keep = sorted(sys.common_neighbors(flag)) if flag else list(range(len(sys)))
    local = {x: i for i, x in enumerate(keep)}
    new_types = [t for i, t in enumerate(sys.types) if i not in ftypes]
    tmap = {old: new for new, old in enumerate(i for i in range(sys.rank) if i not in ftypes)}
    nbs = sys.neighbor_sets
    neighbors = tuple(tuple(local[y] for y in sorted(nbs[x]) if y in local) for x in keep)
    parent_origin = sys.origin or tuple(range(len(sys)))
    return IncidenceSystem(
        types=tuple(new_types),
        type_of=tuple(tmap[sys.type_of[x]] for x in keep),
        neighbors=neighbors,
        labels=tuple(sys.labels[x] for x in keep),
        origin=tuple(parent_origin[x] for x in keep),
    )


# -- connectivity ------------------------------------------------------------

def connected_components(sys: IncidenceSystem) -> list[list[int]]:
    """Components of the incidence graph, each sorted, ordered by smallest id."""
    n = len(sys)
    if n == 0:
        return []
    _, lab = _cc(sys.adjacency, directed=False)
    comps: dict[int, list[int]] = {}
    for x, c in enumerate(lab):
        comps.setdefault(int(c), []).append(x)
    return sorted(comps.values())


def is_connected(sys: IncidenceSystem) -> bool:
    return len(connected_components(sys)) <= 1


def _residue_view(sys: IncidenceSystem, flag: Sequence[int]) -> tuple[np.ndarray, csr_matrix]:
    """Element ids and adjacency of a residue without building a new system."""
    keep = np.array(sorted(sys.common_neighbors(flag)), dtype=np.int64)
    return keep, sys.adjacency[keep][:, keep]


def _adj_connected(adj: csr_matrix) -> bool:
    return adj.shape[0] == 0 or _cc(adj, directed=False)[0] == 1


def is_residually_connected(sys: IncidenceSystem) -> bool:
    """Every residue of rank >= 2, the whole system included, is connected."""
    _require_geometry(sys)
    if sys.rank >= 2 and not is_connected(sys):
        return False
    for size in range(1, sys.rank - 1):
        for flag in flags_of_size(sys, size):
            if not _adj_connected(_residue_view(sys, flag)[1]):
                return False
    return True


# -- firmness ----------------------------------------------------------------

def corank1_counts(sys: IncidenceSystem) -> dict[int, Counter]:
    """For each type i: Counter of chamber counts over flags of cotype {i}."""
    r = sys.rank
    out: dict[int, Counter] = {i: Counter() for i in range(r)}
    nbs = sys.neighbor_sets
    for flag in flags_of_size(sys, r - 1):
        missing = (set(range(r)) - sys.flag_type(flag)).pop()
        if flag:
            common = set(nbs[flag[0]])
            for x in flag[1:]:
                common &= nbs[x]
            out[missing][len(common)] += 1
        else:
            out[missing][len(sys)] += 1
    return out


def firmness(sys: IncidenceSystem) -> str:
    """One of 'thin', 'thick', 'firm_mixed' or 'not_firm'.

    'firm_mixed' means every count is >= 2 but some are 2 and some larger.
    """
    _require_geometry(sys)
    counts = [c for cnt in corank1_counts(sys).values() for c in cnt]
    if not counts:
        return "thin"
    lo, hi = min(counts), max(counts)
    if lo < 2:
        return "not_firm"
    if hi == 2:
        return "thin"
    if lo >= 3:
        return "thick"
    return "firm_mixed"


# -- rank two parameters ----------------------------------------------------

def girth(sys: IncidenceSystem) -> float:
    """Length of the shortest circuit of the incidence graph (inf for forests)."""
    return _levels(sys.adjacency)[1]


def _levels(adj: csr_matrix) -> tuple[np.ndarray, float]:
    """All-pairs BFS distances (-1 if unreachable) and the girth, from all roots at once.

    ``cnt = prev @ A`` counts, for every (root, vertex), the neighbours at the
    previous BFS level.  A vertex first reached at depth d with two such
    neighbours closes an even circuit of length <= 2d; an edge inside level
    d-1 closes an odd one of length <= 2d-1.  Roots on a shortest circuit
    attain the bound, so minimising over all roots gives the girth.
    """
    n = adj.shape[0]
    dist = np.full((n, n), -1, dtype=np.int64)
    if n == 0:
        return dist, INF
    A = adj.toarray().astype(np.float64)
    prev = np.eye(n)
    seen = np.eye(n, dtype=bool)
    np.fill_diagonal(dist, 0)
    best = INF
    d = 0
    while True:
        d += 1
        cnt = prev @ A
        if ((cnt > 0) & (prev > 0)).any():
            best = min(best, 2 * d - 1)
        new = (cnt > 0) & ~seen
        if not new.any():
            break
        if (cnt[new] >= 2).any():
            best = min(best, 2 * d)
        dist[new] = d
        seen |= new
        prev = new.astype(np.float64)
    return dist, float(best)


def rank2_parameters(sys: IncidenceSystem) -> tuple[float, float, float]:
    """(point-diameter, gonality, line-diameter) of a connected rank-2 system.

    The first type plays the role of points.  Diameters measure distance to
    elements of either type.
    """
    if sys.rank != 2:
        raise ValueError("rank2_parameters needs a rank-2 system")
    return _rank2(sys.adjacency, np.array(sys.type_of))


def _rank2(adj: csr_matrix, t: np.ndarray) -> tuple[float, float, float]:
    if len(set(t.tolist())) < 2:
        raise DisconnectedError("rank-2 system is missing a type")
    dist, g = _levels(adj)
    if (dist < 0).any():
        raise DisconnectedError("rank-2 system is disconnected; diameters undefined")
    d_p = dist[t == t.min()].max()
    d_l = dist[t == t.max()].max()
    return _num(d_p), _num(g / 2), _num(d_l)


def _num(x: float):
    return int(x) if math.isfinite(x) and float(x).is_integer() else x


def gonality(sys: IncidenceSystem) -> float:
    return _num(girth(sys) / 2)


# -- diagrams ----------------------------------------------------------------

NONUNIFORM = "nonuniform"
DISCONNECTED = "disconnected"


@dataclass
class Diagram:
    types: tuple[str, ...]
    n: dict[str, int]
    s: dict[str, int | str]
    edges: dict[tuple[str, str], tuple | str] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "types": list(self.types),
            "n": self.n,
            "s": self.s,
            "edges": [{"pair": list(k), "params": list(v) if isinstance(v, tuple) else v}
                      for k, v in sorted(self.edges.items())],
        }

    def is_rotation_invariant(self) -> bool:
        vals = set(self.edges.values())
        return len(vals) <= 1 and len(set(self.s.values())) <= 1 and len(set(self.n.values())) <= 1


def diagram(sys: IncidenceSystem) -> Diagram:
    """Buekenhout diagram with (d_ij, g_ij, d_ji) for every pair of types."""
    _require_geometry(sys)
    r = sys.rank
    n = {sys.types[i]: sys.type_sizes[i] for i in range(r)}
    s: dict[str, int | str] = {}
    for i, cnt in corank1_counts(sys).items():
        s[sys.types[i]] = (next(iter(cnt)) - 1) if len(cnt) == 1 else NONUNIFORM
    edges: dict[tuple[str, str], tuple | str] = {}
    for i in range(r):
        for j in range(i + 1, r):
            others = [k for k in range(r) if k not in (i, j)]
            seen: set = set()
            tarr = np.array(sys.type_of)
            for flag in flags_of_size(sys, r - 2):
                if sorted(sys.flag_type(flag)) != others:
                    continue
                keep, sub = _residue_view(sys, flag)
                try:
                    seen.add(_rank2(sub, tarr[keep]))
                except DisconnectedError:
                    seen.add(DISCONNECTED)
                if len(seen) > 1:
                    break
            key = (sys.types[i], sys.types[j])
            if len(seen) == 1:
                edges[key] = seen.pop()
            else:
                edges[key] = DISCONNECTED if DISCONNECTED in seen else NONUNIFORM
    return Diagram(tuple(sys.types), n, s, edges)


# -- serialisation -----------------------------------------------------------

def to_json(sys: IncidenceSystem) -> dict:
    return {
        "types": list(sys.types),
        "elements": [{"id": x, "type": sys.types[t], "label": sys.labels[x]}
                     for x, t in enumerate(sys.type_of)],
        "incidences": [[int(a), int(b)] for a, b in sys.edges],
    }


def from_json(data: dict | str) -> IncidenceSystem:
    if isinstance(data, str):
        data = json.loads(data)
    types = [str(t) for t in data["types"]]
    tindex = {t: i for i, t in enumerate(types)}
    elems = sorted(data["elements"], key=lambda e: e["id"])
    if [e["id"] for e in elems] != list(range(len(elems))):
        raise ValueError("element ids must be dense from 0")
    return IncidenceSystem.from_incidences(
        types,
        [tindex[str(e["type"])] for e in elems],
        [tuple(p) for p in data["incidences"]],
        [str(e.get("label", e["id"])) for e in elems],
    )


_DOT_COLORS = ("red", "green", "blue", "orange", "purple", "brown", "black")


def to_dot(sys: IncidenceSystem, name: str = "incidence") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for x, t in enumerate(sys.type_of):
        color = _DOT_COLORS[t % len(_DOT_COLORS)]
        lines.append(f"  {x} [label={json.dumps(sys.labels[x])}, color={color}, "
                     f"type={json.dumps(sys.types[t])}];")
    for a, b in sys.edges:
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
