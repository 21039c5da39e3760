import random

import pytest

from diophant.errors import NotEscaped, SearchExhausted, SeedResidueMismatch
from diophant.groupoid import FiniteClosed, norm, orbit_explore
from diophant.intpoly import IntPoly
from diophant.search import (
    axis_families,
    box_search,
    canonical,
    classify_sweep,
    count_points,
    count_sweep,
    find_trivial_escape_seed,
    msolve,
    prove_infinitude,
    smallest_key,
    smallest_solution,
    sweep_grid,
    symmetry_class,
)
from diophant.surface import ALL_TAGS, BASE, LabeledPoint, Surface, trivial_solutions, verify

import oracles

FERMAT = Surface.from_quadruple(0, 0, 0, 0)
EX1 = Surface.from_quadruple(0, -1, 0, -1)
EX2 = Surface.from_quadruple(-1, -2, -1, -2)
EX3 = Surface.from_quadruple(-1, -2, 0, -1)
EX4 = Surface.from_quadruple(0, -1, -1, -2)


def triples(points):
    return [(p.x, p.y, p.z) for p in points]


# box search


def test_box_search_examples():
    got = triples(box_search(EX1, BASE, 50))
    assert (1, 1, 1) in got and (-7, -17, -47) in got
    assert (11, -13, 9) in triples(box_search(EX3, BASE, 15))
    assert sorted(triples(box_search(FERMAT, BASE, 1))) == [(-1, -1, -1), (-1, 1, -1), (1, -1, -1), (1, 1, 3)]


def test_box_search_order():
    pts = box_search(EX1, BASE, 60)
    keys = [(p.x, p.y) for p in pts]
    assert keys == sorted(keys)


def test_box_search_matches_naive_on_random_surfaces():
    rng = random.Random(7)
    for _ in range(25):
        c = rng.choice([1, -1, 2, 3])
        A = IntPoly([c] + [rng.randint(-9, 9) for _ in range(rng.randint(2, 4))] + [rng.choice([1, -1, 2])])
        B = IntPoly([c] + [rng.randint(-9, 9) for _ in range(rng.randint(2, 4))] + [rng.choice([1, -1, 3])])
        s = Surface(A, B)
        C = rng.randint(1, 20)
        assert triples(box_search(s, BASE, C)) == oracles.naive_box(list(A.coeffs), list(B.coeffs), c, C)


@pytest.mark.parametrize("tag", ALL_TAGS)
def test_box_search_companions(tag):
    A, B = EX2.polys(tag)
    assert triples(box_search(EX2, tag, 25)) == oracles.naive_box(list(A.coeffs), list(B.coeffs), 1, 25)


def test_axis_families():
    s = Surface.from_quadruple(-2, 0, 0, 0)  # A(1) = 0
    fams = axis_families(s, BASE, 5)
    assert sorted((f.x, f.y) for f in fams) == [(0, -1), (1, 0)]  # B(-1) = 0 too
    assert all(verify(s, fams[0].point(z)) for z in range(-5, 5))
    fams = axis_families(FERMAT, BASE, 5)  # A(-1) = B(-1) = 0
    assert sorted((f.x, f.y) for f in fams) == [(-1, 0), (0, -1)]
    assert all(verify(FERMAT, f.point(7)) for f in fams)


# smallest solutions


@pytest.mark.parametrize(
    "s, expected",
    [(EX1, (-7, -17, -47)), (EX2, (293, -601, 1095)), (EX3, (11, -13, 9)), (EX4, (-13, 11, 9))],
)
def test_smallest_solution_table(s, expected):
    p = smallest_solution(s, 6, 700)
    assert (p.x, p.y, p.z) == expected
    assert verify(s, p)


def test_smallest_solution_ties_are_broken_uniquely():
    for s in (EX1, EX2, EX3, EX4):
        pts = [p for p in box_search(s, BASE, 700) if p.norm >= 6]
        keys = sorted(smallest_key(p) for p in pts)
        assert keys[0] != keys[1]


def test_smallest_solution_empty():
    assert smallest_solution(EX2, 6, 500) is None


# trivial seeds and classification


def test_trivial_seed_examples():
    cert = find_trivial_escape_seed(Surface.from_quadruple(0, 0, 3, 4))
    assert cert is not None and cert.recheck()
    assert find_trivial_escape_seed(EX1) is None
    cert = find_trivial_escape_seed(FERMAT)
    assert cert.seed == LabeledPoint(BASE, 1, 1, 3)
    assert norm(cert.verdict.witness) >= 9
    assert cert.provenance == "trivial"


def test_symmetry_group():
    grid = sweep_grid(4)
    assert len(grid) == 41 * 41
    seen = set()
    for q in grid:
        cls = symmetry_class(q)
        assert 8 % len(cls) == 0
        assert all(symmetry_class(r) == cls for r in cls)
        assert canonical(q) == min(cls)
        seen |= cls
    assert seen == set(grid)


def test_sweep_grid_size():
    assert len(sweep_grid(6)) == 7225
    assert len(sweep_grid(0)) == 1


def test_classify_bound_zero():
    res = classify_sweep(0)
    assert res.exceptional == [] and res.surfaces_checked == 1


def test_classify_soundness_small_bound():
    res = classify_sweep(2)
    assert res.class_sets() == {symmetry_class((0, -1, 0, -1))}
    for q in res.raw:
        s = Surface.from_quadruple(*q)
        assert all(isinstance(orbit_explore(s, p), FiniteClosed) for p in trivial_solutions(s))
    for q, cert in res.certificates.items():
        assert cert.recheck()


def test_classify_parallel_matches_serial():
    a = classify_sweep(3)
    b = classify_sweep(3, workers=2)
    assert a.to_json() == b.to_json()


def test_large_coefficients_have_trivial_escape_seed():
    rng = random.Random(1)
    for _ in range(40):
        while True:
            q = tuple(rng.randint(-12, 12) for _ in range(4))
            if max(abs(q[0]) + abs(q[1]), abs(q[2]) + abs(q[3])) >= 7:
                break
        assert find_trivial_escape_seed(Surface.from_quadruple(*q)) is not None


# end to end


def test_prove_exceptional_box_seed():
    cert = prove_infinitude(EX1)
    assert cert.provenance == "box-search"
    assert cert.seed == LabeledPoint(BASE, -7, -17, -47)
    assert cert.verdict.threshold == 3
    assert len(cert.solutions) == 10
    norms = [norm(p) for p in cert.solutions]
    assert all(a < b for a, b in zip(norms, norms[1:]))
    assert all(verify(EX1, p) for p in cert.solutions)
    assert cert.recheck()


def test_prove_large_box_seed():
    assert prove_infinitude(EX2).seed == LabeledPoint(BASE, 293, -601, 1095)


def test_prove_trivial_seed():
    s = Surface.from_quadruple(5, 0, 0, 0)
    cert = prove_infinitude(s)
    assert cert.provenance in ("trivial", "companion-trivial")
    assert abs(cert.seed.x) == 1 and abs(cert.seed.y) == 1
    assert all(verify(s, p) for p in cert.solutions)


def test_prove_axis_family():
    s = Surface.from_quadruple(-2, 0, 0, 0)
    cert = prove_infinitude(s)
    assert len(set(cert.solutions)) == 10 and all(verify(s, p) for p in cert.solutions)


def test_prove_exhausted():
    with pytest.raises(SearchExhausted):
        prove_infinitude(EX2, schedule=(10, 100))


# counting


def test_count_points():
    assert count_points(FERMAT, 1)[0] == 4
    # frozen from the independent double loop
    n, fams = count_points(EX2, 601)
    assert n == 6 and fams == []
    assert (293, -601, 1095) in triples(box_search(EX2, BASE, 601))


def test_count_monotone_and_sweep():
    rows = count_sweep(EX1, range(1, 80))
    ns = [n for _, n in rows]
    assert ns == sorted(ns)
    for C in (1, 7, 17, 50, 79):
        assert rows[C - 1] == (C, count_points(EX1, C)[0])


def test_count_matches_naive():
    rng = random.Random(3)
    for _ in range(10):
        q = tuple(rng.randint(-6, 6) for _ in range(4))
        s = Surface.from_quadruple(*q)
        A, B = oracles.quad_polys(*q)
        assert count_points(s, 15)[0] == len(oracles.naive_box(A, B, 1, 15))


# m * xyz variant


def test_msolve_fermat():
    res = msolve(FERMAT, 3, LabeledPoint(BASE, 1, 1, 3), 3)
    assert res.solutions[0] == (1, 1, 1)
    assert len(res.solutions) == len(set(res.solutions))
    for x, y, z in res.solutions:
        assert 3 * x * y * z == x**3 + y**3 + 1
    assert res.scanned >= len(res.solutions)


def test_msolve_size_cap():
    res = msolve(FERMAT, 3, LabeledPoint(BASE, 1, 1, 3), 100, max_bits=2000)
    assert res.truncated
    assert all(3 * x * y * z == x**3 + y**3 + 1 for x, y, z in res.solutions)


def test_msolve_errors():
    with pytest.raises(SeedResidueMismatch):
        msolve(FERMAT, 2, LabeledPoint(BASE, 1, 1, 3), 3)
    with pytest.raises(SeedResidueMismatch):
        msolve(FERMAT, 3, LabeledPoint(BASE, 1, 1, 4), 3)
    # (-1, -1, -3) lies on a closed orbit
    with pytest.raises(NotEscaped):
        msolve(EX1, 3, LabeledPoint(BASE, -1, -1, -3), 3)


def test_exceptional_orbits_are_trivial_points():
    # every exceptional surface in the sweep has closed orbits made of points with |x| = |y| = 1
    for q in classify_sweep(6).raw:
        s = Surface.from_quadruple(*q)
        for seed in trivial_solutions(s):
            v = orbit_explore(s, seed)
            assert all(abs(p.x) == 1 and abs(p.y) == 1 for p in v.orbit), q
