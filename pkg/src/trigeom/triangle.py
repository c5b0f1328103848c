"""The triangle complex of a point-line geometry and its canonical correlations.

Elements are triples ``(p, L, i)`` for every incident point-line pair of the
source and ``i`` in {1, 2, 3}.  ``(p, L, i)`` is incident to
``(p', L', i mod 3 + 1)`` when L and L' meet exactly in p and p' != p (p'
is on L').  The point p shared by the two lines is carried by the element of
the lower cyclic type; the stored relation is the symmetric closure.

Ids: element ``(i - 1) * F + f`` where ``f`` indexes the source flags sorted
by (point, line) and ``F`` is their number.  Internally types are 0, 1, 2.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .incidence import IncidenceSystem
from .perm import compose, inverse, perm_order, power
from .search import induced_type_perm, is_correlation
from .spaces import PointLineGeometry, is_linear_space


class CorrelationError(ValueError):
    pass


class ProjectionError(ValueError):
    pass


@dataclass(eq=False)
class Correlation:
    """An incidence-preserving permutation with the permutation it induces on types.

    ``type_perm[t]`` is the type index that type ``t`` is sent to.
    """

    perm: np.ndarray
    type_perm: tuple[int, ...]

    @classmethod
    def of(cls, sys: IncidenceSystem, perm: Sequence[int], check: bool = True) -> Correlation:
        perm = np.asarray(perm, dtype=np.int32)
        sigma = induced_type_perm(sys, perm)
        if sigma is None:
            raise CorrelationError("map does not send types to types consistently")
        if check and not is_correlation(sys, perm):
            raise CorrelationError("map does not preserve incidence")
        return cls(perm, sigma)

    def then(self, other: Correlation) -> Correlation:
        """Apply self, then other."""
        return Correlation(compose(self.perm, other.perm),
                           tuple(other.type_perm[t] for t in self.type_perm))

    def inverse(self) -> Correlation:
        tinv = [0] * len(self.type_perm)
        for i, t in enumerate(self.type_perm):
            tinv[t] = i
        return Correlation(inverse(self.perm), tuple(tinv))

    def power(self, e: int) -> Correlation:
        out = Correlation(np.arange(len(self.perm), dtype=np.int32), tuple(range(len(self.type_perm))))
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out.then(base)
        return out

    def order(self) -> int:
        return perm_order(self.perm.tolist())

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.perm, np.arange(len(self.perm))))

    def __eq__(self, other) -> bool:
        return isinstance(other, Correlation) and np.array_equal(self.perm, other.perm)

    def __hash__(self):
        return hash(self.perm.tobytes())

    @property
    def kind(self) -> str:
        s = self.type_perm
        moved = sum(1 for i, t in enumerate(s) if i != t)
        return {0: "automorphism", 2: "duality", 3: "triality"}.get(moved, "correlation")

    def to_json(self) -> dict:
        # type permutation written 1-based, matching the type labels 1, 2, 3
        return {"perm": self.perm.tolist(), "type_perm": [t + 1 for t in self.type_perm]}

    @classmethod
    def from_json(cls, data: dict | str) -> Correlation:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(np.asarray(data["perm"], dtype=np.int32), tuple(t - 1 for t in data["type_perm"]))


@dataclass(eq=False)
class TriangleComplex:
    space: PointLineGeometry
    sys: IncidenceSystem
    flags: tuple[tuple[int, int], ...]
    linear_input: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def F(self) -> int:
        return len(self.flags)

    @cached_property
    def flag_index(self) -> dict[tuple[int, int], int]:
        return {f: k for k, f in enumerate(self.flags)}

    def element(self, p: int, L: int, i: int) -> int:
        """Id of (p, L, i); i is 1, 2 or 3."""
        return (i - 1) * self.F + self.flag_index[(p, L)]

    def decode(self, x: int) -> tuple[int, int, int]:
        i, f = divmod(int(x), self.F)
        p, L = self.flags[f]
        return p, L, i + 1

    @cached_property
    def _table(self) -> np.ndarray:
        """(3F, 3) array of (p, L, i)."""
        base = np.array(self.flags, dtype=np.int64).reshape(-1, 2)
        return np.concatenate([np.column_stack([base, np.full(self.F, i)]) for i in (1, 2, 3)])

    def _ids(self, p: np.ndarray, L: np.ndarray, i: np.ndarray) -> np.ndarray:
        lookup = np.full((self.space.v, self.space.b), -1, dtype=np.int64)
        for k, (a, b) in enumerate(self.flags):
            lookup[a, b] = k
        f = lookup[p, L]
        if (f < 0).any():
            raise CorrelationError("image is not an incident point-line pair")
        return (i - 1) * self.F + f


def triangle_complex(space: PointLineGeometry) -> TriangleComplex:
    """Build the rank-3 triangle complex of a point-line geometry."""
    ok, diag = is_linear_space(space)
    notes = []
    if not ok:
        msg = f"{space.name} is not a linear space ({diag[0]}); the result need not be a geometry"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    flags = space.flags
    F = len(flags)
    index = {f: k for k, f in enumerate(flags)}
    line_sets = space.line_sets
    pairs = []
    for k, (p, L) in enumerate(flags):
        for L2 in space.point_lines[p]:
            if L2 == L or line_sets[L] & line_sets[L2] != {p}:
                continue
            for p2 in space.lines[L2]:
                if p2 == p:
                    continue
                k2 = index[(p2, L2)]
                for i in range(3):
                    pairs.append((i * F + k, ((i + 1) % 3) * F + k2))
    labels = [f"({p},{L},{i})" for i in (1, 2, 3) for p, L in flags]
    sys = IncidenceSystem.from_incidences(("1", "2", "3"), [i for i in range(3) for _ in range(F)],
                                          pairs, labels)
    return TriangleComplex(space, sys, flags, ok, notes)


# -- correlations ------------------------------------------------------------

def canonical_triality(tc: TriangleComplex) -> Correlation:
    """(p, L, i) -> (p, L, i mod 3 + 1), verified."""
    n = len(tc.sys)
    perm = (np.arange(n) + tc.F) % n
    c = Correlation(perm.astype(np.int32), (1, 2, 0))
    if not is_correlation(tc.sys, c.perm):
        raise AssertionError("canonical triality failed verification")
    return c


def chamber_to_triple(tc: TriangleComplex, chamber: Sequence[int]) -> tuple[int, int, int]:
    els = sorted(tc.decode(x) for x in chamber)
    by_type = {i: (p, L) for p, L, i in els}
    if len(chamber) != 3 or sorted(by_type) != [1, 2, 3]:
        raise ValueError("a chamber has exactly one element of each type")
    triple = (by_type[1][0], by_type[2][0], by_type[3][0])
    if tuple(sorted(triple_to_chamber(tc, triple))) != tuple(sorted(chamber)):
        raise ValueError(f"{tuple(chamber)} is not a chamber")
    return triple


def triple_to_chamber(tc: TriangleComplex, triple: Sequence[int]) -> tuple[int, int, int]:
    """{(p1,[p1,p3],1), (p2,[p2,p1],2), (p3,[p2,p3],3)} as sorted ids."""
    p1, p2, p3 = triple
    sp = tc.space
    if len({p1, p2, p3}) < 3 or sp.collinear(p1, p2, p3):
        raise ValueError(f"points {tuple(triple)} are collinear or repeated")
    return tuple(sorted((tc.element(p1, sp.line_through(p1, p3), 1),
                         tc.element(p2, sp.line_through(p2, p1), 2),
                         tc.element(p3, sp.line_through(p2, p3), 3))))


def _space_perm(tc: TriangleComplex, g: Sequence[int]) -> np.ndarray:
    sp = tc.space
    g = list(int(x) for x in g)
    if len(g) == sp.v:
        try:
            g = list(sp.element_perm_from_points(g))
        except ValueError as e:
            raise CorrelationError(str(e)) from None
    if len(g) != sp.v + sp.b:
        raise CorrelationError("map must act on the points or on all elements of the source")
    return np.asarray(g, dtype=np.int64)


def lift_automorphism(tc: TriangleComplex, g: Sequence[int]) -> Correlation:
    """(p, L, i) -> (g p, g L, i) for an automorphism g of the source."""
    sp = tc.space
    g = _space_perm(tc, g)
    c = Correlation.of(sp.sys, g)
    if c.type_perm != (0, 1):
        raise CorrelationError("not an automorphism of the source: types are swapped")
    t = tc._table
    perm = tc._ids(g[t[:, 0]], g[t[:, 1] + sp.v] - sp.v, t[:, 2])
    return Correlation.of(tc.sys, perm)


_DUAL_COPY = np.array([0, 1, 3, 2])


def lift_duality(tc: TriangleComplex, alpha: Sequence[int]) -> Correlation:
    """(p,L,1) -> (a(L), a(p), 1), (p,L,2) -> (a(L), a(p), 3), (p,L,3) -> (a(L), a(p), 2)."""
    sp = tc.space
    a = np.asarray([int(x) for x in alpha], dtype=np.int64)
    if len(a) != sp.v + sp.b:
        raise CorrelationError("a duality acts on all elements of the source")
    c = Correlation.of(sp.sys, a)
    if c.type_perm != (1, 0):
        raise CorrelationError("not a duality of the source: types are not swapped")
    t = tc._table
    perm = tc._ids(a[t[:, 1] + sp.v], a[t[:, 0]] - sp.v, _DUAL_COPY[t[:, 2]])
    return Correlation.of(tc.sys, perm)


def kv_beta(tc: TriangleComplex) -> Correlation:
    """Swap each point with the other end of its edge; fix copy 1, swap copies 2 and 3."""
    sp = tc.space
    if not sp.kind or sp.kind[0] != "kv":
        raise ValueError("kv_beta needs the complete graph K_v as source")
    t = tc._table
    lines = np.array(sp.lines, dtype=np.int64)
    other = lines[t[:, 1]].sum(axis=1) - t[:, 0]
    perm = tc._ids(other, t[:, 1], _DUAL_COPY[t[:, 2]])
    return Correlation.of(tc.sys, perm)


@dataclass
class Projection:
    """``phi = lift(F) o tau^k``; with ``via_beta`` the lift is ``lift(F) o beta``."""

    kind: str
    F: np.ndarray
    k: int
    via_beta: bool = False


def _is_thick(sp: PointLineGeometry) -> bool:
    return min(sp.line_sizes) >= 3 and min(sp.point_degrees) >= 3


def _pencil_map(tc: TriangleComplex, psi: np.ndarray, swap: bool) -> np.ndarray:
    """Read F off the copy-1 elements, asserting the pencil conditions.

    Without ``swap``: the image point of (p, L, 1) must depend on p only and
    the image line on L only.  With ``swap`` the roles are exchanged.
    """
    sp = tc.space
    v = sp.v
    F = np.full(v + sp.b, -1, dtype=np.int64)
    for k, (p, L) in enumerate(tc.flags):
        q, M, i = tc.decode(psi[k])
        if i != 1:
            raise ProjectionError("copy 1 is not preserved")
        img_p, img_L = (v + M, q) if swap else (q, v + M)
        for src, img, what in ((p, img_p, "point"), (v + L, img_L, "line")):
            if F[src] < 0:
                F[src] = img
            elif F[src] != img:
                label = "pencil" if what == "point" else "range"
                raise ProjectionError(
                    f"{label} condition fails at {what} {src if what == 'point' else src - v}: "
                    f"images {F[src]} and {img} differ")
    return F


def project_correlation(tc: TriangleComplex, phi: Correlation) -> Projection:
    """Factor a correlation of the complex through the source geometry.

    Even type permutations give ``phi = lift_automorphism(F) o tau^k``; odd
    ones give ``phi = lift_duality(F) o tau^k``.  On K_v (v >= 4) an odd
    correlation factors as ``lift_automorphism(F) o beta o tau^k``.
    """
    sp = tc.space
    is_kv = bool(sp.kind) and sp.kind[0] == "kv"
    if is_kv and sp.v < 4:
        raise ProjectionError("K_3 is outside the projectable range")
    if not is_kv and not _is_thick(sp):
        raise ProjectionError(f"{sp.name} is not thick; projection is refused")
    if not is_correlation(tc.sys, phi.perm):
        raise ProjectionError("input is not a correlation")
    sigma = phi.type_perm
    odd = sum(1 for i in range(3) for j in range(i + 1, 3) if sigma[i] > sigma[j]) % 2 == 1
    sinv = [0] * 3
    for i, s in enumerate(sigma):
        sinv[s] = i
    # psi = phi o tau^-k has type permutation identity (even) or (1 2)->fixing type 0 (odd)
    k = sigma[0] if not odd else (-sinv[0]) % 3
    tau = canonical_triality(tc)
    psi = tau.power(-k).then(phi)
    via_beta = False
    if odd and is_kv:
        psi = kv_beta(tc).then(psi)
        via_beta = True
    swap = odd and not via_beta
    Fm = _pencil_map(tc, psi.perm, swap)
    if (Fm < 0).any():
        raise ProjectionError("some point or line of the source is on no flag")
    if swap:
        recon = lift_duality(tc, Fm)
        kind = "duality"
    else:
        recon = lift_automorphism(tc, Fm)
        kind = "automorphism"
    if not np.array_equal(recon.perm, psi.perm):
        raise ProjectionError("reconstruction from the projected map disagrees")
    return Projection(kind, Fm, k, via_beta)


def reconstruct(tc: TriangleComplex, proj: Projection) -> Correlation:
    """Inverse of :func:`project_correlation`."""
    lift = lift_duality(tc, proj.F) if proj.kind == "duality" else lift_automorphism(tc, proj.F)
    if proj.via_beta:
        lift = kv_beta(tc).then(lift)
    return canonical_triality(tc).power(proj.k).then(lift)
