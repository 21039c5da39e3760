"""Exact integral points on cubic surfaces ``xyz = A(x) + B(y) - c``."""

from .errors import DiophantError
from .groupoid import (
    FiniteClosed,
    InfiniteEscape,
    InfiniteFamily,
    escape_threshold,
    norm,
    orbit_explore,
    orbit_stream,
    sigma_ab,
    sigma_ab_inverse,
    sigma_x,
    sigma_y,
)
from .intpoly import IntPoly
from .parse import format_poly, parse_poly
from .search import (
    ClassificationResult,
    InfinitudeCertificate,
    box_search,
    classify_sweep,
    count_points,
    find_trivial_escape_seed,
    msolve,
    prove_infinitude,
    smallest_solution,
)
from .surface import (
    ALL_TAGS,
    BASE,
    CompanionTag,
    LabeledPoint,
    NormalizationRecord,
    Surface,
    TrivialFamilyReport,
    companion_surface,
    denormalize,
    normalize,
    normalize_general,
    sign_normalize,
    solve_z,
    trivial_solutions,
    verify,
)

__version__ = "0.1.0"
