"""Surfaces ``xyz = A(x) + B(y) - c`` and their companions.

A general equation ``xyz = G(x, y)`` is reduced to this shape by moving every
term divisible by ``xy`` into ``z`` (see :func:`normalize_general`), and, when
``|a| = |b| = |c| = 1``, by flipping the signs of ``x, y, z`` so that
``a = b = c = 1`` (see :func:`sign_normalize`).  The four companion surfaces
replace ``A`` and/or ``B`` by their coefficient reversals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Union

from .errors import (
    AxisInput,
    DegreeTooLow,
    InvalidSurface,
    NonBaseTag,
    NotUnitCoefficients,
    ZeroLeading,
)
from .intpoly import IntPoly

# exponent pair (i, j) -> coefficient of x^i y^j
BiPoly = dict[tuple[int, int], int]

MIN_DEGREE = 3


def bipoly_clean(terms: Mapping[tuple[int, int], int]) -> BiPoly:
    return {k: int(v) for k, v in sorted(terms.items()) if v != 0}


def bipoly_eval(terms: Mapping[tuple[int, int], int], x, y):
    return sum(c * x**i * y**j for (i, j), c in terms.items())


@dataclass(frozen=True, order=True)
class CompanionTag:
    """Which of ``A``/``B`` is replaced by its companion (coefficient reversal)."""

    barA: bool = False
    barB: bool = False

    def flip_a(self) -> CompanionTag:
        return CompanionTag(not self.barA, self.barB)

    def flip_b(self) -> CompanionTag:
        return CompanionTag(self.barA, not self.barB)

    def __xor__(self, other: CompanionTag) -> CompanionTag:
        return CompanionTag(self.barA != other.barA, self.barB != other.barB)

    @property
    def is_base(self) -> bool:
        return not (self.barA or self.barB)

    def to_json(self) -> list[bool]:
        return [self.barA, self.barB]

    @classmethod
    def from_json(cls, data) -> CompanionTag:
        a, b = data
        return cls(bool(a), bool(b))


BASE = CompanionTag(False, False)
ALL_TAGS = (BASE, CompanionTag(False, True), CompanionTag(True, False), CompanionTag(True, True))
UNIT_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class LabeledPoint:
    tag: CompanionTag
    x: int
    y: int
    z: int

    @property
    def norm(self):
        return max(abs(self.x), abs(self.y))

    def sort_key(self):
        return (self.norm, self.tag, self.x, self.y, self.z)

    def triple(self) -> tuple:
        return (self.x, self.y, self.z)

    def to_json(self) -> dict:
        return {"tag": self.tag.to_json(), "x": str(self.x), "y": str(self.y), "z": str(self.z)}

    @classmethod
    def from_json(cls, data: Mapping) -> LabeledPoint:
        tag = CompanionTag.from_json(data.get("tag", [False, False]))
        return cls(tag, int(str(data["x"])), int(str(data["y"])), int(str(data["z"])))

    def __str__(self) -> str:
        bars = "".join(n for n, on in (("Abar", self.tag.barA), ("Bbar", self.tag.barB)) if on)
        return f"({self.x}, {self.y}, {self.z})" + (f"@{bars}" if bars else "")


@dataclass(frozen=True)
class Surface:
    """The surface ``xyz = A(x) + B(y) - c`` with ``c = A(0) = B(0)``."""

    A: IntPoly
    B: IntPoly

    def __post_init__(self):
        if self.A.is_zero() or self.B.is_zero():
            raise InvalidSurface("A and B must be nonzero")
        if self.A.constant != self.B.constant:
            raise InvalidSurface(f"constant terms differ: A(0)={self.A.constant}, B(0)={self.B.constant}")
        if self.A.constant == 0:
            raise InvalidSurface("constant term c must be nonzero")
        if self.A.degree < MIN_DEGREE or self.B.degree < MIN_DEGREE:
            raise DegreeTooLow(f"degrees ({self.A.degree}, {self.B.degree}) below {MIN_DEGREE}")

    @classmethod
    def from_quadruple(cls, a1: int, a2: int, b1: int, b2: int) -> Surface:
        """``xyz = x^3 + y^3 + 1 + a2 x^2 + a1 x + b2 y^2 + b1 y``."""
        return cls(IntPoly((1, a1, a2, 1)), IntPoly((1, b1, b2, 1)))

    @classmethod
    def from_coefficients(cls, A, B) -> Surface:
        A, B = [int(str(v)) for v in A], [int(str(v)) for v in B]
        if (A and A[-1] == 0) or (B and B[-1] == 0):
            raise ZeroLeading("leading coefficient listed as zero")
        return cls(IntPoly(A), IntPoly(B))

    @property
    def c(self) -> int:
        return self.A.constant

    @property
    def is_unit_normalized(self) -> bool:
        return self.A.leading == 1 and self.B.leading == 1 and self.c == 1

    def quadruple(self) -> tuple[int, int, int, int] | None:
        """``(a1, a2, b1, b2)`` for unit-normalized cubics, else None."""
        if not (self.is_unit_normalized and self.A.degree == 3 and self.B.degree == 3):
            return None
        return (self.A[1], self.A[2], self.B[1], self.B[2])

    @cached_property
    def _companions(self) -> dict[CompanionTag, tuple[IntPoly, IntPoly]]:
        Abar, Bbar = self.A.companion(), self.B.companion()
        return {
            CompanionTag(False, False): (self.A, self.B),
            CompanionTag(False, True): (self.A, Bbar),
            CompanionTag(True, False): (Abar, self.B),
            CompanionTag(True, True): (Abar, Bbar),
        }

    def polys(self, tag: CompanionTag) -> tuple[IntPoly, IntPoly]:
        """``(A', B')`` on the tagged companion."""
        return self._companions[tag]

    def rhs(self, tag: CompanionTag, x, y):
        A, B = self._companions[tag]
        return A(x) + B(y) - self.c

    def format(self) -> str:
        ax = IntPoly((0,) + self.A.coeffs[1:]).format("x")
        by = IntPoly((0,) + self.B.coeffs[1:]).format("y")
        by = by[1:] if by.startswith("-") else by
        sign = "-" if self.B.leading < 0 else "+"
        const = f" {'-' if self.c < 0 else '+'} {abs(self.c)}"
        return f"xyz = {ax} {sign} {by}{const}"

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> Surface:
        if "A" in data:
            return cls.from_coefficients(data["A"], data["B"])
        return cls.from_quadruple(*(int(str(data[k])) for k in ("a1", "a2", "b1", "b2")))


def companion_surface(s: Surface, tag: CompanionTag) -> Surface:
    if not s.is_unit_normalized:
        raise NotUnitCoefficients("companion surfaces need a = b = c = 1")
    A, B = s.polys(tag)
    return Surface(A, B)


def solve_z(s: Surface, tag: CompanionTag, x, y):
    """``(A'(x) + B'(y) - c) / (xy)`` if the division is exact, else None."""
    d = x * y
    if d == 0:
        raise AxisInput("x*y must be nonzero")
    q, r = divmod(s.rhs(tag, x, y), d)
    return q if r == 0 else None


def verify(s: Surface, p: LabeledPoint) -> bool:
    return p.x * p.y * p.z == s.rhs(p.tag, p.x, p.y)


def trivial_solutions(s: Surface) -> list[LabeledPoint]:
    """The 16 points with ``x, y`` in ``{1, -1}`` across all four companions."""
    if not s.is_unit_normalized:
        raise NotUnitCoefficients("trivial solutions are defined for a = b = c = 1")
    out = []
    for tag in ALL_TAGS:
        for x0, y0 in UNIT_PAIRS:
            # x0*y0 = +-1, so the division is exact
            out.append(LabeledPoint(tag, x0, y0, s.rhs(tag, x0, y0) * x0 * y0))
    return out


# normalization


@dataclass(frozen=True)
class NormalizationRecord:
    """Bookkeeping to pull canonical points back to ``xyz = G(x, y)``.

    A canonical point ``(X, Y, Z)`` maps to ``x = alpha*X``, ``y = beta*Y``,
    ``z = gamma*Z + Q(x, y)``.
    """

    Q: BiPoly = field(default_factory=dict)
    flips: tuple[int, int, int] = (1, 1, 1)
    original: dict = field(default_factory=dict)

    @property
    def is_identity(self) -> bool:
        return not self.Q and self.flips == (1, 1, 1)

    def to_json(self) -> dict:
        return {
            "Q": [[i, j, str(c)] for (i, j), c in sorted(self.Q.items())],
            "flips": list(self.flips),
            "original": {k: str(v) for k, v in self.original.items()},
        }


@dataclass(frozen=True)
class TrivialFamilyReport:
    """``c = 0``: every ``(0, 0, z)`` solves the equation."""

    A: IntPoly
    B: IntPoly

    def sample(self, count: int = 3) -> list[tuple[int, int, int]]:
        return [(0, 0, z) for z in range(count)]

    def to_json(self) -> dict:
        return {"trivialFamily": "(0, 0, z) for every integer z", "A": self.A.to_json(), "B": self.B.to_json()}


def normalize_general(G: Mapping[tuple[int, int], int]) -> tuple[Union[Surface, TrivialFamilyReport], NormalizationRecord]:
    """Split ``G = xy*Q(x, y) + A(x) + B(y) - c`` with ``c = G(0, 0)``."""
    terms = bipoly_clean(G)
    c = terms.get((0, 0), 0)
    Q = {(i - 1, j - 1): v for (i, j), v in terms.items() if i >= 1 and j >= 1}
    n = max((i for (i, j) in terms if j == 0), default=0)
    m = max((j for (i, j) in terms if i == 0), default=0)
    A = IntPoly([c] + [terms.get((i, 0), 0) for i in range(1, n + 1)])
    B = IntPoly([c] + [terms.get((0, j), 0) for j in range(1, m + 1)])
    original = {"c": c, "n": n, "m": m, "a": terms.get((n, 0), 0) if n else 0, "b": terms.get((0, m), 0) if m else 0}
    record = NormalizationRecord(Q=Q, original=original)
    if c == 0:
        return TrivialFamilyReport(A, B), record
    if n < MIN_DEGREE or m < MIN_DEGREE:
        raise DegreeTooLow(f"pure parts have degrees ({n}, {m}); need both >= {MIN_DEGREE}")
    return Surface(A, B), record


def _sign_for(lead: int, deg: int, c: int) -> int:
    # solve lead * s**deg == c for s in {1, -1}
    if deg % 2:
        return lead * c
    if lead != c:
        raise NotUnitCoefficients(
            f"even degree {deg} with leading sign {lead} != c = {c}: no sign flip makes it monic"
        )
    return 1


def sign_normalize(s: Surface) -> tuple[Surface, NormalizationRecord]:
    """Substitute ``x -> alpha x, y -> beta y, z -> gamma z`` to reach ``a = b = c = 1``.

    For cubics the flips are ``alpha = ac, beta = bc, gamma = abc``.
    """
    a, b, c = s.A.leading, s.B.leading, s.c
    if {abs(a), abs(b), abs(c)} != {1}:
        raise NotUnitCoefficients(f"|a|, |b|, |c| must all be 1, got a={a}, b={b}, c={c}")
    alpha = _sign_for(a, s.A.degree, c)
    beta = _sign_for(b, s.B.degree, c)
    gamma = c * alpha * beta
    # XYZ = c*(A(alpha X) + B(beta Y) - c)
    A = IntPoly(c * alpha**i * ai for i, ai in enumerate(s.A.coeffs))
    B = IntPoly(c * beta**j * bj for j, bj in enumerate(s.B.coeffs))
    original = {"a": a, "b": b, "c": c, "n": s.A.degree, "m": s.B.degree}
    return Surface(A, B), NormalizationRecord(flips=(alpha, beta, gamma), original=original)


def normalize(G: Mapping[tuple[int, int], int]) -> tuple[Union[Surface, TrivialFamilyReport], NormalizationRecord]:
    """:func:`normalize_general` followed by :func:`sign_normalize` when the signs allow it."""
    s, rec = normalize_general(G)
    if isinstance(s, TrivialFamilyReport):
        return s, rec
    if {abs(s.A.leading), abs(s.B.leading), abs(s.c)} != {1}:
        return s, rec
    s2, rec2 = sign_normalize(s)
    return s2, NormalizationRecord(Q=rec.Q, flips=rec2.flips, original=rec.original)


def denormalize(p: LabeledPoint, rec: NormalizationRecord) -> tuple[int, int, int]:
    if not p.tag.is_base:
        raise NonBaseTag("only base-surface points pull back to the original equation")
    alpha, beta, gamma = rec.flips
    x, y = alpha * p.x, beta * p.y
    return (x, y, gamma * p.z + bipoly_eval(rec.Q, x, y))
