"""Enumerative machinery: box searches, the trivial-seed classification sweep,
the end-to-end infinitude pipeline, point counts and the ``m*xyz`` variant."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    NotEscaped,
    NotUnitCoefficients,
    SearchExhausted,
    SeedResidueMismatch,
)
from .groupoid import (
    FiniteClosed,
    InfiniteEscape,
    InfiniteFamily,
    _to_mpz,
    escape_sequence,
    escape_threshold,
    orbit_explore,
    sigma_x,
    sigma_y,
)
from .surface import BASE, CompanionTag, LabeledPoint, Surface, trivial_solutions, verify

log = logging.getLogger(__name__)

Quadruple = tuple[int, int, int, int]

DEFAULT_SCHEDULE = (10, 30, 100, 300, 700, 2000)
DEFAULT_SOLUTIONS = 10


# box search


@dataclass(frozen=True)
class AxisFamily:
    """Points ``(x, y, z)`` with ``x*y == 0`` and ``z`` arbitrary."""

    tag: CompanionTag
    x: int
    y: int

    def point(self, z: int = 0) -> LabeledPoint:
        return LabeledPoint(self.tag, self.x, self.y, z)

    def to_json(self) -> dict:
        return {"tag": self.tag.to_json(), "x": str(self.x), "y": str(self.y), "z": "*"}


def box_search(s: Surface, tag: CompanionTag, C: int) -> list[LabeledPoint]:
    """All points with ``0 < |x|, |y| <= C``, ordered by ``x`` then ``y``.

    Uses ``y | A'(x)`` as a prefilter: ``B'(y) - c`` is always divisible by ``y``.
    """
    if C < 1:
        raise ValueError("C must be >= 1")
    A, B = s.polys(tag)
    c = s.c
    ys = [y for y in range(-C, C + 1) if y]
    out = []
    for x in ys:
        ax = A(x)
        cand = ys if ax == 0 else [y for y in ys if ax % y == 0]
        for y in cand:
            q, r = divmod(ax + B(y) - c, x * y)
            if r == 0:
                out.append(LabeledPoint(tag, x, y, q))
    return out


def axis_families(s: Surface, tag: CompanionTag, C: int) -> list[AxisFamily]:
    """Free-``z`` families from integer roots of ``A'`` (``y = 0``) or ``B'`` (``x = 0``) with ``|root| <= C``."""
    A, B = s.polys(tag)
    fams = [AxisFamily(tag, r, 0) for r in range(-C, C + 1) if r and A(r) == 0]
    fams += [AxisFamily(tag, 0, r) for r in range(-C, C + 1) if r and B(r) == 0]
    return fams


def smallest_key(p: LabeledPoint):
    return (p.norm, abs(p.z), abs(p.x), p.x, p.y)


def smallest_solution(s: Surface, min_norm: int, c_max: int, tag: CompanionTag = BASE) -> Optional[LabeledPoint]:
    """Minimum under ``(norm, |z|, |x|, x, y)`` among solutions with ``min_norm <= norm <= c_max``."""
    if min_norm < 1:
        raise ValueError("min_norm must be >= 1")
    if c_max < min_norm:
        return None
    pts = [p for p in box_search(s, tag, c_max) if p.norm >= min_norm]
    return min(pts, key=smallest_key, default=None)


# certificates


@dataclass(frozen=True)
class InfinitudeCertificate:
    surface: Surface
    seed: LabeledPoint
    verdict: Union[InfiniteEscape, InfiniteFamily]
    provenance: str  # "trivial", "companion-trivial" or "box-search"
    solutions: tuple[LabeledPoint, ...] = ()

    def recheck(self) -> bool:
        """Re-run the orbit exploration and re-verify every listed solution."""
        v = orbit_explore(self.surface, self.seed)
        if type(v) is not type(self.verdict) or v != self.verdict:
            return False
        return all(verify(self.surface, p) for p in self.solutions)

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_json(),
            "provenance": self.provenance,
            "seed": self.seed.to_json(),
            "verdict": self.verdict.to_json(),
            "solutions": [p.to_json() for p in self.solutions],
        }


def certificate_solutions(s: Surface, verdict, k: int) -> tuple[LabeledPoint, ...]:
    """First ``k`` verified points certified by ``verdict``."""
    if isinstance(verdict, InfiniteEscape):
        return tuple(itertools.islice(escape_sequence(s, verdict), k))
    base = verdict.axis_point
    pts = tuple(LabeledPoint(base.tag, base.x, base.y, base.z + i) for i in range(k))
    assert all(verify(s, p) for p in pts)
    return pts


def find_trivial_escape_seed(s: Surface) -> Optional[InfinitudeCertificate]:
    """First trivial seed (over the four companions) whose orbit is not finite."""
    for seed in trivial_solutions(s):
        v = orbit_explore(s, seed)
        if not isinstance(v, FiniteClosed):
            prov = "trivial" if seed.tag.is_base else "companion-trivial"
            return InfinitudeCertificate(s, seed, v, prov)
    return None


def prove_infinitude(
    s: Surface,
    k: int = DEFAULT_SOLUTIONS,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
) -> InfinitudeCertificate:
    """Certify infinitely many integral points on a unit-normalized surface.

    Tries the 16 trivial seeds first; failing that, searches growing boxes on
    the base surface for a point above the escape threshold.
    """
    if not s.is_unit_normalized:
        raise NotUnitCoefficients("prove_infinitude needs a = b = c = 1; sign-normalize first")
    cert = find_trivial_escape_seed(s)
    if cert is None:
        T = escape_threshold(s)
        for C in schedule:
            fams = axis_families(s, BASE, C)
            if fams:
                seed = fams[0].point()
                cert = InfinitudeCertificate(s, seed, InfiniteFamily(seed, T), "box-search")
                break
            pts = [p for p in box_search(s, BASE, C) if p.norm > T]
            if pts:
                seed = min(pts, key=smallest_key)
                cert = InfinitudeCertificate(s, seed, orbit_explore(s, seed), "box-search")
                break
            log.debug("no seed above threshold %d within C=%d", T, C)
        else:
            raise SearchExhausted(f"no point of norm > {T} with |x|, |y| <= {schedule[-1]} on {s.format()}")
    sols = certificate_solutions(s, cert.verdict, k)
    return InfinitudeCertificate(cert.surface, cert.seed, cert.verdict, cert.provenance, sols)


# classification sweep


def sweep_grid(bound: int) -> list[Quadruple]:
    """All ``(a1, a2, b1, b2)`` with ``|a1| + |a2| <= bound`` and ``|b1| + |b2| <= bound``."""
    pairs = [(u, v) for u in range(-bound, bound + 1) for v in range(-bound, bound + 1) if abs(u) + abs(v) <= bound]
    return [p + q for p in pairs for q in pairs]


def symmetry_class(q: Quadruple) -> frozenset[Quadruple]:
    """Images under companionship (swap a1<->a2, b1<->b2) and the x<->y swap."""
    a1, a2, b1, b2 = q
    out = set()
    for (p1, p2), (r1, r2) in itertools.product(((a1, a2), (a2, a1)), ((b1, b2), (b2, b1))):
        out.add((p1, p2, r1, r2))
        out.add((r1, r2, p1, p2))
    return frozenset(out)


def canonical(q: Quadruple) -> Quadruple:
    return min(symmetry_class(q))


@dataclass
class ClassificationResult:
    bound: int
    exceptional: list[Quadruple]  # canonical representatives
    classes: dict[Quadruple, list[Quadruple]]  # representative -> members
    raw: list[Quadruple]  # every exceptional quadruple in the grid
    certificates: dict[Quadruple, InfinitudeCertificate] = field(default_factory=dict, repr=False)

    @property
    def surfaces_checked(self) -> int:
        return len(self.raw) + len(self.certificates)

    def class_sets(self) -> set[frozenset[Quadruple]]:
        return {frozenset(m) for m in self.classes.values()}

    def to_json(self) -> dict:
        return {
            "bound": str(self.bound),
            "surfacesChecked": str(self.surfaces_checked),
            "exceptional": [list(map(str, q)) for q in self.exceptional],
            "classes": [
                {"representative": list(map(str, r)), "members": [list(map(str, q)) for q in self.classes[r]]}
                for r in self.exceptional
            ],
            "raw": [list(map(str, q)) for q in self.raw],
        }

    def table(self) -> str:
        lines = [f"bound {self.bound}: {self.surfaces_checked} surfaces, {len(self.raw)} exceptional, "
                 f"{len(self.exceptional)} classes",
                 f"{'representative':<20} members"]
        for r in self.exceptional:
            lines.append(f"{str(r):<20} " + " ".join(str(q) for q in self.classes[r]))
        return "\n".join(lines)


def _sweep_chunk(quads: Sequence[Quadruple]) -> list[tuple[Quadruple, Optional[InfinitudeCertificate]]]:
    return [(q, find_trivial_escape_seed(Surface.from_quadruple(*q))) for q in quads]


def classify_sweep(bound: int = 6, workers: int = 1) -> ClassificationResult:
    """Find every quadruple in the grid whose 16 trivial-seed orbits are all finite.

    Every surface is evaluated (no symmetry shortcut), and the exceptional set
    is checked to be a union of whole symmetry classes.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    grid = sweep_grid(bound)
    if workers > 1:
        size = max(1, len(grid) // (workers * 8))
        chunks = [grid[i:i + size] for i in range(0, len(grid), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_sweep_chunk, chunks) for r in part]
    else:
        results = _sweep_chunk(grid)
    raw = sorted(q for q, cert in results if cert is None)
    certs = {q: cert for q, cert in results if cert is not None}
    raw_set = set(raw)
    classes: dict[Quadruple, list[Quadruple]] = {}
    for q in raw:
        cls = symmetry_class(q)
        if not cls <= raw_set:
            raise RuntimeError(f"symmetry violated: {q} exceptional but {sorted(cls - raw_set)} are not")
        classes.setdefault(min(cls), sorted(cls))
    return ClassificationResult(bound, sorted(classes), classes, raw, certs)


# counting


def count_points(s: Surface, C: int) -> tuple[int, list[AxisFamily]]:
    """``N(C)``: base-surface points with ``x*y != 0`` and ``|x|, |y| <= C``; axis families listed apart."""
    return len(box_search(s, BASE, C)), axis_families(s, BASE, C)


def count_sweep(s: Surface, Cs: Iterable[int]) -> list[tuple[int, int]]:
    """``(C, N(C))`` rows from a single box search at ``max(Cs)``."""
    Cs = sorted(set(Cs))
    if not Cs:
        return []
    norms = sorted(p.norm for p in box_search(s, BASE, Cs[-1]))
    rows, i = [], 0
    for C in Cs:
        while i < len(norms) and norms[i] <= C:
            i += 1
        rows.append((C, i))
    return rows


# m*xyz = A(x) + B(y) - 1


@dataclass(frozen=True)
class MSolveResult:
    m: int
    solutions: tuple[tuple[int, int, int], ...]
    scanned: int
    truncated: bool  # stopped by the size cap rather than the window

    def to_json(self) -> dict:
        return {
            "m": str(self.m),
            "solutions": [[str(v) for v in t] for t in self.solutions],
            "scanned": str(self.scanned),
            "truncated": self.truncated,
        }


DEFAULT_WINDOW = 64
DEFAULT_MAX_BITS = 1 << 22


def _bounded(s: Surface, p: LabeledPoint, gens, max_bits: int) -> Optional[LabeledPoint]:
    for gen in gens:
        p = gen(s, p, check=False)
        if max(p.x.bit_length(), p.y.bit_length()) > max_bits:
            return None
    return p


def msolve(
    s: Surface,
    m_mod: int,
    seed: LabeledPoint,
    count: int,
    window: int = DEFAULT_WINDOW,
    max_bits: int = DEFAULT_MAX_BITS,
) -> MSolveResult:
    """Solutions of ``m*xyz = A(x) + B(y) - 1`` from the automorphism orbit of ``seed``.

    Scans ``sigma_ab`` iterates ``k = 0, 1, -1, 2, -2, ...`` up to ``|k| <= window``
    and keeps those with ``z = 0 (mod m)``.  A direction is abandoned once a
    coordinate would exceed ``max_bits`` bits.
    """
    if abs(m_mod) < 2:
        raise ValueError("|m| must be >= 2")
    if not seed.tag.is_base:
        raise SeedResidueMismatch("seed must lie on the base surface")
    if seed.z % m_mod:
        raise SeedResidueMismatch(f"seed z = {seed.z} is not divisible by {m_mod}")
    v = orbit_explore(s, seed)
    if not isinstance(v, InfiniteEscape):
        raise NotEscaped(f"seed {seed} has verdict {v.name}")

    forward = (sigma_x, sigma_y, sigma_x, sigma_y)
    backward = (sigma_y, sigma_x, sigma_y, sigma_x)
    heads = {+1: _to_mpz(seed), -1: _to_mpz(seed)}
    sols: list[tuple[int, int, int]] = []
    seen = set()
    scanned = 0
    truncated = False

    def take(p: LabeledPoint) -> None:
        nonlocal scanned
        scanned += 1
        if p.z % m_mod == 0 and p.triple() not in seen:
            seen.add(p.triple())
            t = (p.x, p.y, p.z // m_mod)
            assert m_mod * t[0] * t[1] * t[2] == s.rhs(BASE, t[0], t[1])
            sols.append(t)

    take(heads[1])
    for _ in range(window):
        if len(sols) >= count or not heads:
            break
        for d in (+1, -1):
            if d not in heads or len(sols) >= count:
                continue
            nxt = _bounded(s, heads[d], forward if d > 0 else backward, max_bits)
            if nxt is None:
                del heads[d]
                truncated = True
                continue
            heads[d] = nxt
            take(nxt)
    return MSolveResult(m_mod, tuple(sols[:count]), scanned, truncated)
