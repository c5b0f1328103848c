"""Oriented hypermaps from thin rank-3 geometries.

In a thin geometry every chamber has exactly one i-adjacent chamber for each
type i, so the adjacencies are fixed-point-free involutions r1, r2, r3.  When
the chamber graph is bipartite the chambers of one class are the darts and
sigma = r2 r3, alpha = r3 r1, phi = r1 r2 (left factor applied first).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .incidence import IncidenceSystem, firmness
from .perm import cycles


class NotThinError(ValueError):
    pass


class NotOrientableError(ValueError):
    pass


@dataclass
class Hypermap:
    sigma: np.ndarray
    alpha: np.ndarray
    phi: np.ndarray

    @property
    def darts(self) -> int:
        return len(self.sigma)

    @property
    def vertices(self) -> int:
        return len(cycles(self.sigma.tolist()))

    @property
    def edges(self) -> int:
        return len(cycles(self.alpha.tolist()))

    @property
    def faces(self) -> int:
        return len(cycles(self.phi.tolist()))

    @property
    def euler(self) -> int:
        return self.vertices + self.edges + self.faces - self.darts

    @property
    def genus(self) -> int:
        chi = self.euler
        if chi % 2:
            raise ValueError(f"odd Euler characteristic {chi}")
        return (2 - chi) // 2

    def product_is_identity(self) -> bool:
        # sigma, then alpha, then phi
        return bool(np.array_equal(self.phi[self.alpha[self.sigma]], np.arange(self.darts)))

    def cycle_type(self, which: str) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in cycles(getattr(self, which).tolist()):
            out[len(c)] = out.get(len(c), 0) + 1
        return dict(sorted(out.items()))

    def summary(self) -> str:
        return (f"D={self.darts}, V={self.vertices}, E={self.edges}, F={self.faces}, "
                f"chi={self.euler}, genus={self.genus}")

    def to_json(self) -> dict:
        return {"sigma": self.sigma.tolist(), "alpha": self.alpha.tolist(), "phi": self.phi.tolist(),
                "summary": self.summary()}


def adjacency_involutions(sys: IncidenceSystem) -> tuple[list[tuple[int, ...]], list[np.ndarray]]:
    """Chambers (sorted) and, per type, the involution swapping i-adjacent chambers."""
    if sys.rank != 3:
        raise ValueError("hypermaps need rank 3")
    if firmness(sys) != "thin":
        raise NotThinError("geometry is not thin")
    chs = sys.chambers
    out = []
    for i in range(3):
        panels: dict[tuple[int, ...], list[int]] = {}
        for k, c in enumerate(chs):
            key = tuple(x for x in c if sys.type_of[x] != i)
            panels.setdefault(key, []).append(k)
        r = np.empty(len(chs), dtype=np.int64)
        for a, b in panels.values():
            r[a], r[b] = b, a
        out.append(r)
    return list(chs), out


def hypermap_export(sys: IncidenceSystem) -> Hypermap:
    chs, (r1, r2, r3) = adjacency_involutions(sys)
    n = len(chs)
    side = np.full(n, -1, dtype=np.int64)
    for start in range(n):
        if side[start] >= 0:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for r in (r1, r2, r3):
                y = int(r[x])
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotOrientableError("chamber graph is not bipartite")
    darts = np.nonzero(side == side[0])[0]
    local = np.full(n, -1, dtype=np.int64)
    local[darts] = np.arange(len(darts))
    sigma = local[r3[r2[darts]]]
    alpha = local[r1[r3[darts]]]
    phi = local[r2[r1[darts]]]
    return Hypermap(sigma, alpha, phi)
