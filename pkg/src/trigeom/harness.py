"""End-to-end instance reports and the structural checks built on them."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Sequence

import numpy as np

from . import incidence as inc
from .perm import orbit
from .search import (ScaleError, automorphism_group, correlation_group, is_correlation,
                     max_elements)
from .spaces import PointLineGeometry, build, count_noncollinear_triples, cycle_geometry, \
    cube_geometry, complete_graph, projective_space, noncollinear_triples
from .triangle import TriangleComplex, canonical_triality, triangle_complex

KIND_NAMES = {"pg": "PG", "ag": "AG", "kv": "K", "uh": "UH"}


@dataclass(frozen=True)
class SpaceSpec:
    kind: str
    params: tuple[int, ...]

    @classmethod
    def parse(cls, text: str | Sequence) -> SpaceSpec:
        parts = text.split() if isinstance(text, str) else [str(x) for x in text]
        if not parts:
            raise ValueError("empty space descriptor")
        kind = parts[0].lower()
        if kind not in KIND_NAMES:
            raise ValueError(f"unknown space kind {parts[0]!r}")
        try:
            params = tuple(int(x) for x in parts[1:])
        except ValueError:
            raise ValueError(f"non-integer parameter in {' '.join(parts)!r}")
        want = 1 if kind in ("kv", "uh") else 2
        if len(params) != want:
            raise ValueError(f"{kind} takes {want} parameter(s), got {len(params)}")
        return cls(kind, params)

    @property
    def name(self) -> str:
        if self.kind == "kv":
            return f"K{self.params[0]}"
        return f"{KIND_NAMES[self.kind]}({','.join(map(str, self.params))})"

    def build(self) -> PointLineGeometry:
        return build(self.kind, *self.params)

    def delta_size(self) -> int:
        """Element count of the complex, from the space alone."""
        return 3 * len(self.build().flags)


def is_flag_transitive(sys: inc.IncidenceSystem, gens: Sequence[np.ndarray]) -> tuple[bool, int]:
    """Whether the group generated by ``gens`` is transitive on chambers, and the orbit size."""
    for g in gens:
        if not is_correlation(sys, g) or any(sys.type_of[int(g[x])] != t for x, t in enumerate(sys.type_of)):
            raise ValueError("generator is not a type-preserving automorphism")
    chs = sys.chambers
    if not chs:
        return False, 0
    orb = orbit(gens, frozenset(chs[0]), "setwise")
    return len(orb) == len(chs), len(orb)


def triple_orbit(space: PointLineGeometry, point_gens: Sequence[np.ndarray]) -> int:
    seed = next(noncollinear_triples(space))
    return len(orbit(point_gens, seed, "tuplewise"))


def source_automorphisms(space: PointLineGeometry) -> list[np.ndarray]:
    """Automorphism generators of the source geometry, restricted to its points."""
    res = automorphism_group(space.sys, bound=10 ** 9)
    return [np.asarray(g[:space.v]) for g in res.group.generators]


def source_has_duality(space: PointLineGeometry) -> bool:
    if space.v != space.b:
        return False
    return (1, 0) in correlation_group(space.sys).realized


@dataclass
class InstanceReport:
    name: str
    kind: str
    params: list[int]
    elements: int
    type_sizes: list[int]
    is_geometry: bool | None = None
    connected: bool | None = None
    components: int | None = None
    residually_connected: bool | None = None
    firmness: str | None = None
    thin: bool | None = None
    firm: bool | None = None
    flag_transitive: bool | None = None
    chamber_orbit: int | None = None
    chambers: int | None = None
    has_duality: bool | None = None
    has_triality: bool | None = None
    source_has_duality: bool | None = None
    aut_order: int | None = None
    cor_order: int | None = None
    type_perms: list[list[int]] | None = None
    diagram: dict | None = None
    omitted: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)

    def table_row(self) -> str:
        def yn(x):
            return "-" if x is None else ("Yes" if x else "No")
        return (f"{self.name:<9} {yn(self.connected):<9} {yn(self.residually_connected):<4} "
                f"{yn(self.thin):<5} {str(self.aut_order or '-'):>10} {str(self.cor_order or '-'):>10} "
                f"{yn(self.has_duality):<7} {yn(self.flag_transitive)}")


TABLE_HEADER = (f"{'space':<9} {'Connected':<9} {'RC':<4} {'Thin':<5} {'|Aut|':>10} {'|Cor|':>10} "
                f"{'Duality':<7} FT")

_CACHE: dict[tuple, tuple[PointLineGeometry, TriangleComplex]] = {}


def complex_for(spec: SpaceSpec) -> tuple[PointLineGeometry, TriangleComplex]:
    key = (spec.kind, spec.params)
    if key not in _CACHE:
        sp = spec.build()
        _CACHE[key] = (sp, triangle_complex(sp))
    return _CACHE[key]


def report(spec: SpaceSpec | str, bound: int | None = None, search: bool = True) -> InstanceReport:
    """Full pipeline for one space.  Fields beyond the bound are left as None and listed in ``omitted``."""
    if not isinstance(spec, SpaceSpec):
        spec = SpaceSpec.parse(spec)
    bound = max_elements() if bound is None else bound
    t0 = time.perf_counter()
    sp, tc = complex_for(spec)
    s = tc.sys
    rep = InstanceReport(spec.name, spec.kind, list(spec.params), len(s), list(s.type_sizes))
    if len(s) > bound:
        rep.omitted = ["scale"]
        rep.seconds = time.perf_counter() - t0
        return rep
    rep.is_geometry = s.is_geometry
    comps = inc.connected_components(s)
    rep.components = len(comps)
    rep.connected = len(comps) == 1
    rep.chambers = len(s.chambers)
    if rep.is_geometry:
        rep.residually_connected = inc.is_residually_connected(s)
        rep.firmness = inc.firmness(s)
        rep.thin = rep.firmness == "thin"
        rep.firm = rep.firmness in ("thin", "thick", "firm_mixed")
        rep.diagram = _diagram_json(inc.diagram(s))
    else:
        rep.omitted += ["residually_connected", "firmness", "diagram"]
    canonical_triality(tc)
    if search:
        cor = correlation_group(s, bound=bound)
        rep.aut_order = cor.aut_order
        rep.cor_order = cor.order
        rep.has_duality = cor.has_duality
        rep.has_triality = cor.has_triality
        rep.type_perms = [[t + 1 for t in sig] for sig in sorted(cor.realized)]
        rep.flag_transitive, rep.chamber_orbit = is_flag_transitive(s, cor.aut.group.generators)
        rep.source_has_duality = source_has_duality(sp)
    else:
        rep.omitted += ["search"]
    rep.seconds = round(time.perf_counter() - t0, 3)
    return rep


def _diagram_json(d: inc.Diagram) -> dict:
    def enc(x):
        if isinstance(x, tuple):
            return [v if v != inc.INF else "inf" for v in x]
        return x
    return {"n": d.n, "s": d.s, "edges": {f"{a}{b}": enc(v) for (a, b), v in sorted(d.edges.items())}}


# -- the characterization check ----------------------------------------------

POSITIVE = ("pg 2 2", "pg 2 3", "pg 2 4", "ag 2 3", "ag 2 4", "ag 2 5", "uh 2", "uh 4")
NEGATIVE = ("pg 3 2", "ag 3 3", "kv 4", "kv 5")


@dataclass
class CaseResult:
    name: str
    positive: bool
    firm: bool
    residually_connected: bool
    flag_transitive: bool
    delta_duality: bool
    source_duality: bool
    passed: bool


def expected_delta_duality(kind: str, source_duality: bool) -> bool:
    """A thick source passes its dualities to the complex; complete graphs gain one more (beta)."""
    return source_duality or kind == "kv"


def verify_characterization(cases: Sequence[tuple[str, bool]] | None = None) -> list[CaseResult]:
    """Positives must be firm, residually connected and flag-transitive; negatives fail one.

    The complex must have a duality exactly when :func:`expected_delta_duality` says so.
    """
    if cases is None:
        cases = [(c, True) for c in POSITIVE] + [(c, False) for c in NEGATIVE]
    out = []
    for text, positive in cases:
        spec = SpaceSpec.parse(text)
        r = report(spec, bound=10 ** 9)
        firm = bool(r.firm)
        rc = bool(r.residually_connected)
        ft = bool(r.flag_transitive)
        good = (firm and rc and ft) if positive else not (firm and rc and ft)
        want = expected_delta_duality(spec.kind, bool(r.source_has_duality))
        good = good and r.has_duality == want and bool(r.has_triality)
        out.append(CaseResult(r.name, positive, firm, rc, ft, bool(r.has_duality),
                              bool(r.source_has_duality), good))
    return out


def negative_gonality_control() -> dict[str, bool]:
    """Sources with a 4-circuit as shortest circuit give a non-geometry; triangles give a geometry."""
    import warnings
    out = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for sp, want in ((cycle_geometry(4), False), (cube_geometry(), False),
                         (projective_space(2, 2), True), (complete_graph(4), True)):
            out[sp.name] = triangle_complex(sp).sys.is_geometry == want
    return out


def flag_transitivity_vs_triples(spec: SpaceSpec | str) -> tuple[bool, bool]:
    """(complex flag-transitive, source transitive on non-collinear triples), computed independently."""
    if not isinstance(spec, SpaceSpec):
        spec = SpaceSpec.parse(spec)
    sp, tc = complex_for(spec)
    aut = automorphism_group(tc.sys, bound=10 ** 9)
    ft, _ = is_flag_transitive(tc.sys, aut.group.generators)
    gens = source_automorphisms(sp)
    trans = triple_orbit(sp, gens) == count_noncollinear_triples(sp)
    return ft, trans


# -- expected values ------------------------------------------------------------

def load_expected(name: str = "classical") -> dict:
    text = resources.files("trigeom").joinpath("data", f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


CHECK_FIELDS = ("connected", "components", "residually_connected", "thin", "aut_order", "cor_order",
                "has_duality", "has_triality", "flag_transitive", "diagram")


def compare_expected(rep: InstanceReport, expected: dict, fields: Sequence[str] = CHECK_FIELDS
                     ) -> list[tuple[str, object, object]]:
    """Mismatches (field, expected, computed) against one expected row.

    A row's ``deviations`` block overrides a listed value with the value
    established by exhaustive computation; the reason is kept alongside.
    """
    row = dict(expected)
    for k, dev in row.get("deviations", {}).items():
        row[k] = dev["computed"]
    bad = []
    for f in fields:
        if f not in row:
            continue
        got = getattr(rep, f)
        want = row[f]
        if f == "diagram" and got is not None:
            got = _compare_diagram(got, want)
            if got is None:
                continue
            bad.append((f, want, got))
            continue
        if got != want:
            bad.append((f, want, got))
    return bad


def _compare_diagram(got: dict, want: dict):
    sub = {"n": got["n"], "s": got["s"], "edges": got["edges"]}
    norm = {k: want[k] for k in ("n", "s", "edges") if k in want}
    ok = all(sub[k] == v for k, v in norm.items())
    return None if ok else sub
