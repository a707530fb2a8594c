"""Acceptance suite: every shipped guarantee as one named pass/fail check.

The same harness backs the `cohh selftest` CLI command and the pytest
acceptance module.  Each check is exact (integer equality against an
independently enumerated answer) and deterministic; timing lives on the
result object, never inside the printable detail.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .coalg import (
    DIVIDED_POWER,
    EXTERIOR,
    POLYNOMIAL,
    CoalgebraPresentation,
    Cogenerator,
    add_term,
    coassociativity_ok,
    cocommutativity_ok,
    coproduct,
    counitality_ok,
)
from .cochain import BidegreeWindow, build_complex, verify_cosimplicial_identities
from .cohomology import (
    DIVIDED_EXTERIOR,
    EXTERIOR_POLYNOMIAL,
    cohh_table,
    euler_check,
    expected_grid,
)
from .collapse import (
    E2Presentation,
    analyze,
    e2_from_divided_homotopy,
    e2_from_exterior_homotopy,
    exton2_hypotheses,
    feasible_differentials,
)
from .exactfield import Field
from .hopfstruct import AlgebraPresentation, indecomposables, primitives
from .torpipe import hz_e2_pipeline

CHARACTERISTICS = (0, 2, 3, 5)
LAMBDA_DEGREES = (3, 5, 7)
GAMMA_DEGREES = (2, 4)
GAMMA_TRUNCATION = 8
SWEEP_PRIMES = (0, 2, 3, 5, 7)
SWEEP_MAX_T = 40


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _lambda_presentation(p: int, degrees) -> CoalgebraPresentation:
    return CoalgebraPresentation(
        Field(p),
        [Cogenerator(f"y{i + 1}" if len(degrees) > 1 else "y", EXTERIOR, d)
         for i, d in enumerate(degrees)],
    )


def _poly_presentation(p: int, degree: int) -> CoalgebraPresentation:
    return CoalgebraPresentation(Field(p), [Cogenerator("w", POLYNOMIAL, degree)])


def _gamma_presentation(p: int, degree: int) -> CoalgebraPresentation:
    return CoalgebraPresentation(
        Field(p),
        [Cogenerator("x", DIVIDED_POWER, degree, truncation=GAMMA_TRUNCATION)],
    )


def check_lambda_tables():
    count = 0
    for d in LAMBDA_DEGREES:
        for p in CHARACTERISTICS:
            window = BidegreeWindow(4, 5 * d)
            table = cohh_table(build_complex(_lambda_presentation(p, [d]), window))
            grid = expected_grid(EXTERIOR_POLYNOMIAL, [d], window)
            if table.entries != grid:
                return False, f"table mismatch for |y|={d} over characteristic {p}"
            count += 1
    return True, f"{count} tables equal the exterior x polynomial grid"


def check_gamma_tables():
    count = 0
    for d in GAMMA_DEGREES:
        for p in CHARACTERISTICS:
            window = BidegreeWindow(2, 4 * d)
            table = cohh_table(build_complex(_gamma_presentation(p, d), window))
            grid = expected_grid(DIVIDED_EXTERIOR, [d], window)
            if table.entries != grid:
                return False, f"table mismatch for |x|={d} over characteristic {p}"
            count += 1
    return True, f"{count} tables equal the divided-power x exterior grid"


def check_hz_pipeline():
    window = BidegreeWindow(3, 6)
    grid = expected_grid(EXTERIOR_POLYNOMIAL, [1], window)
    for p in (2, 3, 5):
        result = hz_e2_pipeline(p, window)
        if result.table.entries != grid:
            return False, f"table mismatch at p={p}"
        if (
            "||τ||=(0,1)" not in result.description
            or "||ω||=(1,1)" not in result.description
        ):
            return False, f"identification string wrong at p={p}: {result.description}"
        if result.tor_dims[:3] != [1, 1, 0]:
            return False, f"unexpected Tor dims at p={p}: {result.tor_dims[:3]}"
    return True, "pipeline reproduces the (0,1)/(1,1) grid at p=2,3,5"


def check_collapse_certificates():
    for d in LAMBDA_DEGREES:
        for p in CHARACTERISTICS:
            cert = analyze(e2_from_exterior_homotopy(p, [d]), max_t=10 * d)
            if cert.verdict != "collapses" or cert.obstructions:
                return False, f"single-generator case |y|={d}, p={p} did not collapse"
    # two generators of degrees 3 and 5: the two known low-degree obstructions
    cert3 = analyze(e2_from_exterior_homotopy(3, [3, 5]), max_t=SWEEP_MAX_T)
    want_src = (0, 1, 1, 0)   # y2*w1 in generator order y1, y2, w1, w2
    want_tgt = (0, 0, 3, 0)   # w1^3
    if cert3.verdict != "obstructed" or len(cert3.obstructions) != 1:
        return False, f"p=3 case: expected exactly one obstruction, got {len(cert3.obstructions)}"
    o = cert3.obstructions[0]
    if (o.source, o.target, o.page) != (want_src, want_tgt, 2):
        return False, "p=3 case: obstruction is not d_2: y2*w1 -> w1^3"
    cert2 = analyze(e2_from_exterior_homotopy(2, [3, 5]), max_t=SWEEP_MAX_T)
    hits = [
        o for o in cert2.obstructions
        if (o.source, o.target, o.page) == ((0, 1, 0, 1), (0, 0, 4, 0), 3)
    ]
    if not hits:
        return False, "p=2 case: missing d_3: y2*w2 -> w1^4"
    for degrees in ([2], [4], [2, 4]):
        for p in (0, 3):
            cert = analyze(e2_from_divided_homotopy(p, degrees), max_t=SWEEP_MAX_T)
            if cert.verdict != "collapses" or cert.argument is None:
                return False, f"divided-power case {degrees}, p={p} lacks the column argument"
    return True, "single-generator collapse, both known obstructions, column argument"


def check_hypothesis_sweep():
    verified = 0
    for a, b in combinations_with_replacement(range(3, 16, 2), 2):
        for p in SWEEP_PRIMES:
            e2 = e2_from_exterior_homotopy(p, [a, b])
            checks = exton2_hypotheses(e2)
            if all(checks.values()):
                if feasible_differentials(e2, SWEEP_MAX_T):
                    return False, f"hypotheses hold but candidates survive: |y|=({a},{b}), p={p}"
                verified += 1
    return True, f"{verified} hypothesis-clean cases have empty candidate lists"


def _structural_corpus(p: int):
    yield "Lambda(3)", _lambda_presentation(p, [3]), BidegreeWindow(4, 15), BidegreeWindow(3, 12)
    yield "Lambda(5)", _lambda_presentation(p, [5]), BidegreeWindow(4, 25), BidegreeWindow(2, 12)
    yield "Lambda(7)", _lambda_presentation(p, [7]), BidegreeWindow(4, 35), BidegreeWindow(2, 15)
    yield "k[w2]", _poly_presentation(p, 2), BidegreeWindow(4, 12), BidegreeWindow(2, 8)
    yield "k[w4]", _poly_presentation(p, 4), BidegreeWindow(4, 20), BidegreeWindow(2, 12)
    yield "Gamma(2)", _gamma_presentation(p, 2), BidegreeWindow(3, 12), BidegreeWindow(2, 8)
    yield "Gamma(4)", _gamma_presentation(p, 4), BidegreeWindow(3, 16), BidegreeWindow(2, 12)
    yield "Lambda(3,5)", _lambda_presentation(p, [3, 5]), BidegreeWindow(3, 16), BidegreeWindow(2, 10)


def check_structural_suite(corrupt_twist: bool = False):
    if corrupt_twist:
        report = verify_cosimplicial_identities(
            _lambda_presentation(3, [3]), BidegreeWindow(3, 12), twist_sign=-1
        )
        if report.passed:
            return False, "corrupted twist was not detected (fixture broken)"
        return False, f"cosimplicial-identity failure: {report.describe()}"
    for p in CHARACTERISTICS:
        for label, C, window, id_window in _structural_corpus(p):
            where = f"{label} over characteristic {p}"
            if not (
                coassociativity_ok(C) and counitality_ok(C) and cocommutativity_ok(C)
            ):
                return False, f"coalgebra axiom fails: {where}"
            cx = build_complex(C, window)  # raises if d.d != 0
            table = cohh_table(cx)
            if not euler_check(cx, table).passed:
                return False, f"Euler check fails: {where}"
            for t in range(window.max_t + 1):
                if table.dim(0, t) != len(C.basis_in_degree(t)):
                    return False, f"row s=0 differs from the coalgebra dims: {where}"
            report = verify_cosimplicial_identities(C, id_window)
            if not report.passed:
                return False, f"cosimplicial identity fails: {where}: {report.describe()}"
    # normalized and full complexes agree on cohomology
    for p in CHARACTERISTICS:
        C = _lambda_presentation(p, [3])
        window = BidegreeWindow(3, 12)
        normalized = cohh_table(build_complex(C, window, normalized=True))
        full = cohh_table(build_complex(C, window, normalized=False))
        if normalized.entries != full.entries:
            return False, f"normalized/full cohomology differ over characteristic {p}"
    return True, "d.d=0, identities, axioms, Euler, and normalization agree on the corpus"


def _expected_poly_primitives(p: int, degree: int, max_t: int):
    if p == 0:
        return [(1,)]
    out = []
    e = 1
    while e * degree <= max_t:
        out.append((e,))
        e *= p
    return out


def check_closed_forms():
    max_t = 30
    for p in CHARACTERISTICS:
        # polynomial coalgebra: primitives are the p-th power columns
        for d in GAMMA_DEGREES:
            C = _poly_presentation(p, d)
            got = primitives(C, max_t)
            exps = sorted(
                m.exponents
                for elems in got.by_degree.values()
                for e in elems
                for m in e
            )
            want = sorted(_expected_poly_primitives(p, d, max_t))
            if exps != want:
                return False, f"k[w] primitives wrong for |w|={d}, p={p}"
            if p:
                count = sum(len(v) for v in got.by_degree.values())
                bound = 0
                q = 1
                while q * d <= max_t:
                    bound += 1
                    q *= p
                if count != bound:
                    return False, f"k[w] primitive count wrong for |w|={d}, p={p}"
        # exterior coalgebras: primitives are exactly the generators
        for degrees in ([3], [5], [7], [3, 5]):
            C = _lambda_presentation(p, degrees)
            got = primitives(C, max_t)
            found = sorted(
                m.exponents
                for elems in got.by_degree.values()
                for e in elems
                for m in e
            )
            gens = sorted(
                tuple(1 if j == i else 0 for j in range(len(degrees)))
                for i in range(len(degrees))
            )
            if found != gens:
                return False, f"exterior primitives wrong for degrees {degrees}, p={p}"
        # divided powers: only the degree-d class itself
        for d in GAMMA_DEGREES:
            got = primitives(_gamma_presentation(p, d), max_t)
            found = [
                m.exponents
                for elems in got.by_degree.values()
                for e in elems
                for m in e
            ]
            if found != [(1,)]:
                return False, f"divided-power primitives wrong for |x|={d}, p={p}"
        # every reported primitive satisfies the primitive equation exactly
        for C in [_poly_presentation(p, 2), _lambda_presentation(p, [3, 5])]:
            prims = primitives(C, max_t)
            for elems in prims.by_degree.values():
                for elem in elems:
                    delta = coproduct(C, elem)
                    for m, c in elem.items():
                        add_term(delta, (C.unit(), m), C.field.neg(c), C.field)
                        add_term(delta, (m, C.unit()), C.field.neg(c), C.field)
                    if delta:
                        return False, f"reported primitive is not primitive over p={p}"
        # indecomposables: exactly the algebra generators
        for gens in (
            [Cogenerator("w", POLYNOMIAL, 2)],
            [Cogenerator("w", POLYNOMIAL, 4)],
            [Cogenerator("y1", EXTERIOR, 3), Cogenerator("y2", EXTERIOR, 5)],
        ):
            A = AlgebraPresentation(Field(p), gens)
            got = indecomposables(A, max_t)
            found = sorted(m.exponents for ms in got.by_degree.values() for m in ms)
            want = sorted(
                tuple(1 if j == i else 0 for j in range(len(gens)))
                for i in range(len(gens))
            )
            if found != want:
                return False, f"indecomposables wrong for {[g.name for g in gens]}, p={p}"
    return True, "primitive and indecomposable closed forms hold to degree 30"


# -- independent all-pairs oracle for the collapse enumeration -----------------


def _all_e2_monomials(e2: E2Presentation, max_t: int) -> list:
    gens = e2.generators
    out = []
    exps = [0] * len(gens)

    def rec(i: int, t: int):
        if i == len(gens):
            out.append(tuple(exps))
            return
        g = gens[i]
        cap = (max_t - t) // g.t
        if g.kind == EXTERIOR:
            cap = min(cap, 1)
        for e in range(cap + 1):
            exps[i] = e
            rec(i + 1, t + e * g.t)
        exps[i] = 0

    rec(0, 0)
    return out


def _is_char_power(e: int, p: int) -> bool:
    if e < 1:
        return False
    if p == 0:
        return e == 1
    while e % p == 0:
        e //= p
    return e == 1


def brute_force_feasible(e2: E2Presentation, max_t: int) -> set:
    """All-pairs scan over E2 basis monomials: bidegree law, then the
    indecomposable-source and primitive-target predicates."""
    gens = e2.generators
    poly_idx = [i for i, g in enumerate(gens) if g.kind == POLYNOMIAL]
    monos = _all_e2_monomials(e2, max_t)

    def indecomposable(m):
        return sum(m[i] for i in poly_idx) == 1

    def primitive(m):
        support = [i for i, e in enumerate(m) if e]
        if len(support) != 1:
            return False
        i = support[0]
        if gens[i].kind == EXTERIOR:
            return m[i] == 1
        return _is_char_power(m[i], e2.characteristic)

    sources = [m for m in monos if indecomposable(m)]
    targets = [m for m in monos if primitive(m)]
    found = set()
    for u in sources:
        us, ut = e2.bidegree(u)
        for v in targets:
            vs, vt = e2.bidegree(v)
            r = vs - us
            if r >= 2 and vt - ut == r - 1:
                found.add((u, v, r))
    return found


def check_oracle_equivalence():
    cases = 0
    for degrees in ([3], [5], [7], [3, 5]):
        for p in CHARACTERISTICS:
            e2 = e2_from_exterior_homotopy(p, degrees)
            fast = {
                (c.source, c.target, c.page)
                for c in feasible_differentials(e2, SWEEP_MAX_T)
            }
            slow = brute_force_feasible(e2, SWEEP_MAX_T)
            if fast != slow:
                return False, f"enumeration disagrees with the all-pairs scan: {degrees}, p={p}"
            cases += 1
    return True, f"{cases} presentations agree with the all-pairs scan"


ACCEPTANCE_CHECKS = (
    ("lambda-grid-reproduction", check_lambda_tables),
    ("divided-power-grid-reproduction", check_gamma_tables),
    ("hz-pipeline", check_hz_pipeline),
    ("collapse-certificates", check_collapse_certificates),
    ("hypothesis-feasibility-sweep", check_hypothesis_sweep),
    ("structural-invariants", check_structural_suite),
    ("primitive-indecomposable-closed-forms", check_closed_forms),
    ("collapse-oracle-equivalence", check_oracle_equivalence),
)


def run_selftest(corrupt_twist: bool = False) -> list:
    """Run the acceptance checks; with corrupt_twist, run only the negative
    control that flips the twist sign and must report an identity failure."""
    if corrupt_twist:
        checks = (
            ("structural-invariants", lambda: check_structural_suite(corrupt_twist=True)),
        )
    else:
        checks = ACCEPTANCE_CHECKS
    results = []
    for name, fn in checks:
        t0 = time.perf_counter()
        passed, detail = fn()
        results.append(CheckResult(name, passed, detail, time.perf_counter() - t0))
    return results
