"""Point-line geometries and the classical linear spaces.

Points get ids ``0..v-1`` and lines ids ``0..b-1``; inside the underlying
:class:`IncidenceSystem` line ``j`` is element ``v + j``.  Lines are sorted
by their sorted tuple of point ids.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .field import Field, gf
from .incidence import IncidenceSystem


@dataclass(eq=False)
class PointLineGeometry:
    """A rank-2 incidence structure given by its lines as point sets."""

    name: str
    point_labels: tuple[str, ...]
    lines: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[int, ...], ...] | None = None
    field: Field | None = None
    kind: tuple = ()
    line_labels: tuple[str, ...] = ()

    def __post_init__(self):
        self.lines = tuple(sorted(tuple(sorted(set(l))) for l in self.lines))
        if not self.line_labels:
            self.line_labels = tuple("{" + ",".join(map(str, l)) + "}" for l in self.lines)

    @classmethod
    def from_blocks(cls, name, point_labels, blocks, **kw) -> PointLineGeometry:
        return cls(name, tuple(point_labels), tuple(tuple(b) for b in blocks), **kw)

    @property
    def v(self) -> int:
        return len(self.point_labels)

    @property
    def b(self) -> int:
        return len(self.lines)

    def line_element(self, j: int) -> int:
        return self.v + j

    @cached_property
    def sys(self) -> IncidenceSystem:
        v = self.v
        inc = [(p, v + j) for j, line in enumerate(self.lines) for p in line]
        return IncidenceSystem.from_incidences(
            ("P", "L"), [0] * v + [1] * self.b, inc,
            tuple(self.point_labels) + tuple(self.line_labels))

    @cached_property
    def point_lines(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.v)]
        for j, line in enumerate(self.lines):
            for p in line:
                out[p].append(j)
        return tuple(tuple(x) for x in out)

    @cached_property
    def line_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(l) for l in self.lines)

    @cached_property
    def flags(self) -> tuple[tuple[int, int], ...]:
        """All (point, line) incident pairs, sorted by point then line."""
        return tuple((p, j) for p in range(self.v) for j in self.point_lines[p])

    @cached_property
    def _pair_lines(self) -> dict[tuple[int, int], list[int]]:
        out: dict[tuple[int, int], list[int]] = {}
        for j, line in enumerate(self.lines):
            for a, c in itertools.combinations(line, 2):
                out.setdefault((a, c), []).append(j)
        return out

    def lines_through(self, p: int, q: int) -> list[int]:
        if p > q:
            p, q = q, p
        return list(self._pair_lines.get((p, q), ()))

    def line_through(self, p: int, q: int) -> int:
        """Index of the unique line on the distinct points p and q."""
        if p == q:
            raise ValueError("line_through needs two distinct points")
        ls = self.lines_through(p, q)
        if len(ls) != 1:
            raise ValueError(f"points {p},{q} lie on {len(ls)} lines")
        return ls[0]

    def collinear(self, p: int, q: int, r: int) -> bool:
        if len({p, q, r}) < 3:
            return True
        return any(r in self.line_sets[j] for j in self.lines_through(p, q))

    @cached_property
    def line_sizes(self) -> set[int]:
        return {len(l) for l in self.lines}

    @cached_property
    def point_degrees(self) -> set[int]:
        return {len(x) for x in self.point_lines}

    def is_linear(self) -> bool:
        return is_linear_space(self)[0]

    def element_perm_from_points(self, point_perm: Sequence[int]) -> tuple[int, ...]:
        """Extend a collineation given on points to all elements of ``sys``."""
        index = {l: j for j, l in enumerate(self.lines)}
        out = list(point_perm)
        for line in self.lines:
            img = tuple(sorted(point_perm[p] for p in line))
            if img not in index:
                raise ValueError("point map does not send lines to lines")
            out.append(self.v + index[img])
        return tuple(out)

    def dual(self) -> PointLineGeometry:
        blocks = [self.point_lines[p] for p in range(self.v)]
        return PointLineGeometry(f"dual {self.name}", tuple(self.line_labels), tuple(blocks))


LinearSpace = PointLineGeometry


# -- axioms ------------------------------------------------------------------

def is_linear_space(space: PointLineGeometry | IncidenceSystem) -> tuple[bool, list[str]]:
    """Check the three linear-space axioms; returns (ok, [first violation])."""
    if isinstance(space, IncidenceSystem):
        if space.rank != 2:
            return False, ["not a rank-2 system"]
        pts = space.elements_of_type(0)
        lines = [sorted(space.neighbor_sets[l]) for l in space.elements_of_type(1)]
        local = {p: i for i, p in enumerate(pts)}
        space = PointLineGeometry("system", tuple(str(p) for p in pts),
                                  tuple(tuple(local[p] for p in l) for l in lines))
    for j, line in enumerate(space.lines):
        if len(line) < 2:
            return False, [f"line {j} has {len(line)} point(s)"]
    for p in range(space.v):
        if len(space.point_lines[p]) < 2:
            return False, [f"point {p} is on {len(space.point_lines[p])} line(s)"]
    for p, q in itertools.combinations(range(space.v), 2):
        k = len(space.lines_through(p, q))
        if k != 1:
            return False, [f"points {p},{q} lie on {k} lines"]
    return True, []


def line_through(space: PointLineGeometry, p: int, q: int) -> int:
    return space.line_through(p, q)


def noncollinear_triples(space: PointLineGeometry) -> Iterator[tuple[int, int, int]]:
    """Ordered triples of pairwise distinct, non-collinear points."""
    v = space.v
    for p1 in range(v):
        for p2 in range(v):
            if p2 == p1:
                continue
            on = space.line_sets[space.line_through(p1, p2)]
            for p3 in range(v):
                if p3 not in on:
                    yield (p1, p2, p3)


def count_noncollinear_triples(space: PointLineGeometry) -> int:
    v = space.v
    return sum(v - len(space.lines[space.line_through(p, q)])
               for p in range(v) for q in range(v) if p != q)


# -- vector helpers over GF(q), codes as coordinates -------------------------

def _normalize(F: Field, vec: tuple[int, ...]) -> tuple[int, ...]:
    """Scale so that the first nonzero coordinate is 1."""
    lead = next(c for c in vec if c)
    if lead == F.one_code:
        return vec
    s = F.inv_table[lead]
    mul = F.mul_table[s]
    return tuple(mul[c] for c in vec)


def _axpy(F: Field, a: int, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    mul, add = F.mul_table[a], F.add_table
    return tuple(add[mul[xi]][yi] for xi, yi in zip(x, y))


def projective_points(F: Field, dim: int) -> list[tuple[int, ...]]:
    """Normalized representatives of the 1-spaces of GF(q)^dim, sorted."""
    pts = [v for v in itertools.product(range(F.order), repeat=dim) if any(v)]
    return sorted({_normalize(F, v) for v in pts})


def _projective_line(F: Field, a, b) -> set[tuple[int, ...]]:
    return {b} | {_normalize(F, _axpy(F, t, b, a)) for t in range(F.order)}


def _fmt_vec(F: Field, v) -> str:
    return "(" + ",".join(repr(F.element(c)) for c in v) + ")"


# -- builders ----------------------------------------------------------------

def complete_graph(v: int) -> PointLineGeometry:
    """K_v as a linear space: points are vertices, lines are edges."""
    if not isinstance(v, int) or v < 3:
        raise ValueError("complete_graph needs v >= 3")
    lines = list(itertools.combinations(range(v), 2))
    return PointLineGeometry(f"K{v}", tuple(str(i) for i in range(v)), tuple(lines),
                             kind=("kv", v))


def projective_space(n: int, q: int) -> PointLineGeometry:
    """Points and lines of PG(n, q)."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("projective_space needs n >= 2")
    F = gf(q)
    pts = projective_points(F, n + 1)
    index = {p: i for i, p in enumerate(pts)}
    lines: set[tuple[int, ...]] = set()
    covered: set[tuple[int, int]] = set()
    for i, a in enumerate(pts):
        for j in range(i + 1, len(pts)):
            if (i, j) in covered:
                continue
            line = tuple(sorted(index[x] for x in _projective_line(F, a, pts[j])))
            lines.add(line)
            covered.update(itertools.combinations(line, 2))
    return PointLineGeometry(f"PG({n},{q})", tuple(_fmt_vec(F, p) for p in pts), tuple(lines),
                             coords=tuple(pts), field=F, kind=("pg", n, q))


def affine_space(n: int, q: int) -> PointLineGeometry:
    """Points and lines of AG(n, q), q >= 3."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("affine_space needs n >= 2")
    F = gf(q)
    if q == 2:
        raise ValueError("AG(n,2) has 2-point lines; build it as the circle "
                         f"complete_graph({2 ** n}) instead")
    pts = sorted(itertools.product(range(F.order), repeat=n))
    index = {p: i for i, p in enumerate(pts)}
    neg = F.neg_table
    lines: set[tuple[int, ...]] = set()
    covered: set[tuple[int, int]] = set()
    for i, a in enumerate(pts):
        for j in range(i + 1, len(pts)):
            if (i, j) in covered:
                continue
            d = _axpy(F, F.one_code, pts[j], tuple(neg[c] for c in a))
            line = tuple(sorted(index[_axpy(F, t, d, a)] for t in range(F.order)))
            lines.add(line)
            covered.update(itertools.combinations(line, 2))
    return PointLineGeometry(f"AG({n},{q})", tuple(_fmt_vec(F, p) for p in pts), tuple(lines),
                             coords=tuple(pts), field=F, kind=("ag", n, q))


def hermitian_form(F: Field, q: int, vec) -> int:
    """x0^(q+1) + x1^(q+1) + x2^(q+1) as a code in F = GF(q^2)."""
    add = F.add_table
    acc = 0
    for c in vec:
        acc = add[acc][F.pow_code(c, q + 1)]
    return acc


def hermitian_unital(q: int) -> PointLineGeometry:
    """UH(q): the Hermitian curve of PG(2, q^2) with its secant lines as blocks."""
    if q not in (2, 3, 4, 5):
        raise ValueError("hermitian_unital supports q in {2, 3, 4, 5}")
    F = gf(q * q)
    curve = [p for p in projective_points(F, 3) if hermitian_form(F, q, p) == 0]
    index = {p: i for i, p in enumerate(curve)}
    blocks: set[tuple[int, ...]] = set()
    covered: set[tuple[int, int]] = set()
    for i, a in enumerate(curve):
        for j in range(i + 1, len(curve)):
            if (i, j) in covered:
                continue
            line = _projective_line(F, a, curve[j])
            block = tuple(sorted(index[x] for x in line if x in index))
            if len(block) != q + 1:
                raise AssertionError(f"secant meets the curve in {len(block)} points")
            blocks.add(block)
            covered.update(itertools.combinations(block, 2))
    return PointLineGeometry(f"UH({q})", tuple(_fmt_vec(F, p) for p in curve), tuple(blocks),
                             coords=tuple(curve), field=F, kind=("uh", q))


# -- non-linear point-line geometries used as controls -----------------------

def cycle_geometry(k: int) -> PointLineGeometry:
    """Vertices and edges of the k-cycle (gonality k)."""
    lines = [(i, (i + 1) % k) for i in range(k)]
    return PointLineGeometry(f"C{k}", tuple(str(i) for i in range(k)), tuple(lines),
                             kind=("cycle", k))


def cube_geometry() -> PointLineGeometry:
    """Vertices and edges of the 3-cube (gonality 4)."""
    lines = [(a, a ^ (1 << i)) for a in range(8) for i in range(3) if a < a ^ (1 << i)]
    return PointLineGeometry("Q3", tuple(format(a, "03b") for a in range(8)), tuple(lines),
                             kind=("cube",))


def near_pencil(v: int) -> PointLineGeometry:
    """One line through v-1 points plus 2-point lines from the remaining point."""
    if v < 4:
        raise ValueError("near_pencil needs v >= 4")
    lines = [tuple(range(1, v))] + [(0, i) for i in range(1, v)]
    return PointLineGeometry(f"NearPencil({v})", tuple(str(i) for i in range(v)), tuple(lines),
                             kind=("nearpencil", v))


def generalized_digon(a: int = 2, b: int = 2) -> PointLineGeometry:
    """Every one of ``a`` points on every one of ``b`` lines."""
    line = tuple(range(a))
    return PointLineGeometry(f"Digon({a},{b})", tuple(str(i) for i in range(a)), (line,) * b,
                             kind=("digon", a, b), line_labels=tuple(f"L{j}" for j in range(b)))


BUILDERS = {
    "pg": projective_space,
    "ag": affine_space,
    "kv": complete_graph,
    "uh": hermitian_unital,
}


def build(kind: str, *params: int) -> PointLineGeometry:
    try:
        fn = BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown space kind {kind!r}; expected one of {sorted(BUILDERS)}")
    return fn(*params)
