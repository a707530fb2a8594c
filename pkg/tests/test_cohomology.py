import json
from itertools import product

import pytest

from cohh.coalg import (
    DIVIDED_POWER,
    EXTERIOR,
    POLYNOMIAL,
    CoalgebraPresentation,
    Cogenerator,
)
from cohh.cochain import BidegreeWindow, build_complex
from cohh.cohomology import (
    DIVIDED_EXTERIOR,
    EXTERIOR_POLYNOMIAL,
    BigradedTable,
    cohh_table,
    euler_check,
    expected_grid,
    identify_presentation,
    table_to_csv,
    table_to_json_dict,
)
from cohh.exactfield import Field

CHARS = (0, 2, 3, 5)


def exterior(p, *degrees):
    return CoalgebraPresentation(
        Field(p),
        [Cogenerator(f"y{i + 1}" if len(degrees) > 1 else "y", EXTERIOR, d)
         for i, d in enumerate(degrees)],
    )


def gamma(p, degree):
    return CoalgebraPresentation(
        Field(p), [Cogenerator("x", DIVIDED_POWER, degree, truncation=8)]
    )


def brute_exterior_poly_grid(degrees, window):
    """Monomial-by-monomial count of the exterior(base) x polynomial(column) grid."""
    grid = {
        (s, t): 0
        for s in range(window.max_s + 1)
        for t in range(window.max_t + 1)
    }
    n = len(degrees)
    caps = [window.max_t // d for d in degrees]
    for eps in product((0, 1), repeat=n):
        for ws in product(*(range(c + 1) for c in caps)):
            s = sum(ws)
            t = sum(e * d for e, d in zip(eps, degrees)) + sum(
                w * d for w, d in zip(ws, degrees)
            )
            if s <= window.max_s and t <= window.max_t:
                grid[(s, t)] += 1
    return grid


def brute_divided_exterior_grid(degrees, window):
    """Count of divided-power base monomials times square-free column classes."""
    grid = {
        (s, t): 0
        for s in range(window.max_s + 1)
        for t in range(window.max_t + 1)
    }
    n = len(degrees)
    caps = [window.max_t // d for d in degrees]
    for gammas in product(*(range(c + 1) for c in caps)):
        for eps in product((0, 1), repeat=n):
            s = sum(eps)
            t = sum(g * d for g, d in zip(gammas, degrees)) + sum(
                e * d for e, d in zip(eps, degrees)
            )
            if s <= window.max_s and t <= window.max_t:
                grid[(s, t)] += 1
    return grid


def test_lambda_table_matches_spec_listed_spots():
    window = BidegreeWindow(4, 15)
    expected_nonzero = {
        (0, 0), (0, 3), (1, 3), (1, 6), (2, 6),
        (2, 9), (3, 9), (3, 12), (4, 12), (4, 15),
    }
    for p in CHARS:
        table = cohh_table(build_complex(exterior(p, 3), window))
        assert {k for k, v in table.entries.items() if v} == expected_nonzero
        assert all(v == 1 for v in table.entries.values() if v)


@pytest.mark.parametrize("degree", [3, 5])
@pytest.mark.parametrize("p", CHARS)
def test_lambda_table_matches_brute_grid(degree, p):
    window = BidegreeWindow(4, 4 * degree)
    table = cohh_table(build_complex(exterior(p, degree), window))
    assert table.entries == brute_exterior_poly_grid([degree], window)


@pytest.mark.parametrize("p", CHARS)
def test_two_generator_lambda_table(p):
    window = BidegreeWindow(3, 16)
    table = cohh_table(build_complex(exterior(p, 3, 5), window))
    assert table.entries == brute_exterior_poly_grid([3, 5], window)


@pytest.mark.parametrize("p", CHARS)
def test_gamma_table_matches_brute_grid(p):
    window = BidegreeWindow(2, 8)
    table = cohh_table(build_complex(gamma(p, 2), window))
    assert table.entries == brute_divided_exterior_grid([2], window)
    # one column-1 exterior class only: nothing survives at s = 2
    assert table.dim(1, 4) == 1
    assert all(table.dim(2, t) == 0 for t in range(9))


def test_expected_grid_agrees_with_brute_enumeration():
    window = BidegreeWindow(4, 20)
    assert expected_grid(EXTERIOR_POLYNOMIAL, [3, 5], window) == brute_exterior_poly_grid(
        [3, 5], window
    )
    assert expected_grid(DIVIDED_EXTERIOR, [2, 4], window) == brute_divided_exterior_grid(
        [2, 4], window
    )


def test_row_zero_equals_coalgebra_dims():
    for p in CHARS:
        C = exterior(p, 3, 5)
        window = BidegreeWindow(2, 12)
        table = cohh_table(build_complex(C, window))
        for t in range(13):
            assert table.dim(0, t) == len(C.basis_in_degree(t))


def test_trivial_coalgebra_table():
    C = CoalgebraPresentation(Field(3), [])
    window = BidegreeWindow(3, 4)
    table = cohh_table(build_complex(C, window))
    assert table.dim(0, 0) == 1
    assert sum(table.entries.values()) == 1
    ident = identify_presentation(table)
    assert ident is not None and ident.shape == "trivial"
    assert ident.describe() == "k (trivial)"


def test_euler_check_passes_and_detects_corruption():
    cx = build_complex(exterior(3, 3), BidegreeWindow(4, 12))
    table = cohh_table(cx)
    report = euler_check(cx, table)
    assert report.passed and report.checked_degrees

    corrupted = BigradedTable(table.window, dict(table.entries), dict(table.flags))
    corrupted.entries[(1, 6)] += 1
    corrupted.entries[(2, 9)] += 1
    report = euler_check(cx, corrupted)
    assert not report.passed
    assert report.first_violation == 6  # smallest corrupted degree wins


def test_euler_check_skips_degrees_beyond_window():
    # max contributing s for t=12 is 6 > max_s=2, so t=12 cannot be certified
    cx = build_complex(CoalgebraPresentation(
        Field(3), [Cogenerator("w", POLYNOMIAL, 2)]), BidegreeWindow(2, 12))
    report = euler_check(cx, cohh_table(cx))
    assert report.passed
    assert 12 in report.skipped_degrees
    assert 4 in report.checked_degrees


def test_identify_presentation_shapes():
    window = BidegreeWindow(3, 16)
    t1 = cohh_table(build_complex(exterior(3, 3, 5), window))
    ident = identify_presentation(t1)
    assert ident.shape == EXTERIOR_POLYNOMIAL and ident.degrees == [3, 5]
    assert "Λ(y1,y2)⊗k[w1,w2]" in ident.describe()
    assert "||y2||=(0,5)" in ident.describe()

    t2 = cohh_table(build_complex(gamma(5, 2), BidegreeWindow(2, 8)))
    ident2 = identify_presentation(t2)
    assert ident2.shape == DIVIDED_EXTERIOR and ident2.degrees == [2]
    assert "Γ[x1]⊗Λ(z1)" in ident2.describe()
    assert "||z1||=(1,2)" in ident2.describe()


def test_identify_presentation_unrecognized():
    window = BidegreeWindow(2, 5)
    entries = {(s, t): 0 for s in range(3) for t in range(6)}
    entries[(0, 0)] = 1
    entries[(1, 5)] = 7
    assert identify_presentation(BigradedTable(window, entries)) is None
    entries2 = {(s, t): 0 for s in range(3) for t in range(6)}
    entries2[(0, 0)] = 2
    assert identify_presentation(BigradedTable(window, entries2)) is None


def test_representatives_are_cycles_independent_mod_image():
    from cohh.exactfield import echelonize

    C = exterior(3, 3, 5)
    window = BidegreeWindow(3, 16)
    cx = build_complex(C, window)
    table = cohh_table(cx, representatives=True)
    fld = C.field
    for (s, t), reps in table.representatives.items():
        assert len(reps) == table.dim(s, t)
        d = cx.differentials[(s, t)]
        for vec in reps:
            assert all(fld.is_zero(x) for x in d.apply(vec))
        if s >= 1 and reps:
            image = cx.differentials[(s - 1, t)].columns()
            im_rank, _, _ = echelonize(image, fld)
            joint_rank, _, _ = echelonize(image + reps, fld)
            assert joint_rank == im_rank + len(reps)


def test_csv_and_json_exports_agree_with_table():
    window = BidegreeWindow(2, 8)
    table = cohh_table(build_complex(exterior(2, 3), window))
    csv_text = table_to_csv(table)
    lines = csv_text.strip().splitlines()
    assert lines[0] == "s,t,dim,flags"
    parsed = {}
    for line in lines[1:]:
        s, t, dim, flags = line.split(",")
        parsed[(int(s), int(t))] = int(dim)
        assert flags == ""
    assert parsed == table.entries

    data = table_to_json_dict(table)
    assert data["format_version"] == 1
    from_json = {(e["s"], e["t"]): e["dim"] for e in data["entries"]}
    assert from_json == table.entries
    json.dumps(data)  # serializable


def test_normalized_and_full_cohomology_agree():
    for p in CHARS:
        C = exterior(p, 3)
        window = BidegreeWindow(3, 12)
        normalized = cohh_table(build_complex(C, window, normalized=True))
        full = cohh_table(build_complex(C, window, normalized=False))
        assert normalized.entries == full.entries
