"""The cosimplicial object built from iterated coproducts, truncated to a window.

Level r holds tensor powers with r+1 factors (coefficients in slot 0).  Cofaces
apply the right coaction, the interior coproducts, or the left coaction
followed by the twist of the first factor to the last (with Koszul sign);
codegeneracies apply the counit in an interior slot.  The differential is the
alternating sum of the cofaces, restricted to the normalized basis (no unit
factor in slots >= 1) when requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coalg import CoalgebraPresentation, add_term, apply_coproduct_to_slot
from .exactfield import SparseMatrix

DEFAULT_MAX_S = 6
DEFAULT_MAX_T = 24


class WindowTooSmall(ValueError):
    """Bidegree window has a negative bound."""


class DifferentialNotSquareZero(ValueError):
    """d composed with d is nonzero at some bigraded spot."""


@dataclass(frozen=True)
class BidegreeWindow:
    """Finite truncation: cosimplicial degrees s <= max_s, internal degrees t <= max_t."""

    max_s: int = DEFAULT_MAX_S
    max_t: int = DEFAULT_MAX_T


def tensor_basis(C: CoalgebraPresentation, s: int, t: int, normalized: bool) -> list:
    """Ordered basis of the (s+1)-fold tensor power in internal degree t.

    Normalized: slots 1..s are restricted to positive-degree monomials.
    Slots are filled left to right, degrees ascending, monomials in basis order.
    """
    if s < 0 or t < 0:
        return []
    out: list = []
    acc: list = [None] * (s + 1)

    def rec(slot: int, remaining: int):
        if slot == s + 1:
            if remaining == 0:
                out.append(tuple(acc))
            return
        lo = 1 if (normalized and slot >= 1) else 0
        for td in range(lo, remaining + 1):
            for m in C.basis_in_degree(td):
                acc[slot] = m
                rec(slot + 1, remaining - td)
        acc[slot] = None

    rec(0, t)
    return out


def is_normalized_tuple(tup: tuple) -> bool:
    return all(not m.is_unit() for m in tup[1:])


def twist_first_to_last(C: CoalgebraPresentation, terms: dict, twist_sign: int = 1) -> dict:
    """Cycle the first tensor factor to the last with the Koszul sign.

    twist_sign = -1 deliberately corrupts the sign (self-test fixture)."""
    fld = C.field
    out: dict = {}
    for tup, coeff in terms.items():
        first, rest = tup[0], tup[1:]
        crossing = C.degree(first) * sum(C.degree(m) for m in rest)
        c = coeff if crossing % 2 == 0 else fld.neg(coeff)
        if twist_sign == -1:
            c = fld.neg(c)
        add_term(out, rest + (first,), c, fld)
    return out


def coface_terms(
    C: CoalgebraPresentation, i: int, s: int, tup: tuple, twist_sign: int = 1
) -> dict:
    """Image of one basis tuple (s+1 factors) under the i-th coface, 0 <= i <= s+1."""
    if not 0 <= i <= s + 1:
        raise IndexError(f"coface index {i} outside [0, {s + 1}]")
    start = {tup: C.field.one}
    if i <= s:
        # i = 0 is the right coaction on the coefficient slot, which for the
        # diagonal bicomodule is again the coproduct.
        return apply_coproduct_to_slot(C, start, i)
    expanded = apply_coproduct_to_slot(C, start, 0)  # left coaction
    return twist_first_to_last(C, expanded, twist_sign)


def codegeneracy_terms(C: CoalgebraPresentation, i: int, s: int, tup: tuple) -> dict:
    """Image of one basis tuple (s+2 factors) under the i-th codegeneracy, 0 <= i <= s."""
    if not 0 <= i <= s:
        raise IndexError(f"codegeneracy index {i} outside [0, {s}]")
    if len(tup) != s + 2:
        raise ValueError("codegeneracy input must have s+2 factors")
    if not tup[i + 1].is_unit():
        return {}
    return {tup[: i + 1] + tup[i + 2:]: C.field.one}


def differential_terms(C: CoalgebraPresentation, tup: tuple, twist_sign: int = 1) -> dict:
    """Alternating sum of all cofaces on one tuple, before any normalization."""
    s = len(tup) - 1
    fld = C.field
    out: dict = {}
    for i in range(s + 2):
        for key, c in coface_terms(C, i, s, tup, twist_sign).items():
            add_term(out, key, c if i % 2 == 0 else fld.neg(c), fld)
    return out


def _matrix_from_terms(C, source_basis, target_basis, expand, project=False) -> SparseMatrix:
    index = {tup: r for r, tup in enumerate(target_basis)}
    triples = []
    for j, tup in enumerate(source_basis):
        for key, coeff in expand(tup).items():
            r = index.get(key)
            if r is None:
                if project:
                    continue  # normalization projection drops unit-bearing tuples
                raise KeyError(f"image term {key} missing from the target basis")
            triples.append((r, j, coeff))
    return SparseMatrix.from_triples(C.field, len(target_basis), len(source_basis), triples)


def coface(
    C: CoalgebraPresentation, i: int, s: int, t: int, twist_sign: int = 1
) -> SparseMatrix:
    """Matrix of the i-th coface on the full tensor basis in internal degree t."""
    if not 0 <= i <= s + 1:
        raise IndexError(f"coface index {i} outside [0, {s + 1}]")
    src = tensor_basis(C, s, t, normalized=False)
    tgt = tensor_basis(C, s + 1, t, normalized=False)
    return _matrix_from_terms(C, src, tgt, lambda tup: coface_terms(C, i, s, tup, twist_sign))


def codegeneracy(C: CoalgebraPresentation, i: int, s: int, t: int) -> SparseMatrix:
    """Matrix of the i-th codegeneracy (s+2 factors -> s+1) in internal degree t."""
    if not 0 <= i <= s:
        raise IndexError(f"codegeneracy index {i} outside [0, {s}]")
    src = tensor_basis(C, s + 1, t, normalized=False)
    tgt = tensor_basis(C, s, t, normalized=False)
    return _matrix_from_terms(C, src, tgt, lambda tup: codegeneracy_terms(C, i, s, tup))


@dataclass
class CochainComplex:
    """Bigraded complex with one sparse differential matrix per (s, t) spot."""

    presentation: CoalgebraPresentation
    window: BidegreeWindow
    normalized: bool
    spots: dict          # (s, t) -> basis tuples, for 0 <= s <= max_s + 1
    differentials: dict  # (s, t) -> SparseMatrix spot(s,t) -> spot(s+1,t)

    def spot_dim(self, s: int, t: int) -> int:
        return len(self.spots.get((s, t), ()))

    def min_positive_degree(self) -> Optional[int]:
        cogs = self.presentation.cogenerators
        return min((c.degree for c in cogs), default=None)

    def max_contributing_s(self, t: int) -> Optional[int]:
        """Largest s with a possibly nonzero spot in degree t (normalized only)."""
        if not self.normalized:
            return None
        d = self.min_positive_degree()
        return 0 if d is None else t // d


def build_complex(
    C: CoalgebraPresentation,
    window: BidegreeWindow,
    normalized: bool = True,
    twist_sign: int = 1,
    check: bool = True,
) -> CochainComplex:
    """Assemble bases and differentials for all spots inside the window.

    With check=True every composable pair of differentials is verified to
    compose to zero; a failure raises DifferentialNotSquareZero.
    """
    if window.max_s < 0 or window.max_t < 0:
        raise WindowTooSmall(f"window {window} has a negative bound")
    from .coalg import NotConnected

    if any(c.degree < 1 for c in C.cogenerators):
        raise NotConnected("presentation has a cogenerator below degree 1")

    spots = {
        (s, t): tensor_basis(C, s, t, normalized)
        for s in range(window.max_s + 2)
        for t in range(window.max_t + 1)
    }
    diffs = {}
    for s in range(window.max_s + 1):
        for t in range(window.max_t + 1):
            diffs[(s, t)] = _matrix_from_terms(
                C,
                spots[(s, t)],
                spots[(s + 1, t)],
                lambda tup: differential_terms(C, tup, twist_sign),
                project=normalized,
            )
    cx = CochainComplex(C, window, normalized, spots, diffs)
    if check:
        bad = first_square_failure(cx)
        if bad is not None:
            raise DifferentialNotSquareZero(f"d.d != 0 first fails at (s,t)={bad}")
    return cx


def first_square_failure(cx: CochainComplex) -> Optional[tuple]:
    """First (s, t) where d(s+1,t) . d(s,t) is nonzero, or None."""
    for t in range(cx.window.max_t + 1):
        for s in range(cx.window.max_s):
            outer = cx.differentials[(s + 1, t)]
            inner = cx.differentials[(s, t)]
            if not outer.compose(inner).is_zero():
                return (s, t)
    return None


@dataclass
class IdentityReport:
    """Outcome of the cosimplicial identity scan; failures are data, not errors."""

    passed: bool
    checked: int
    failure: Optional[dict] = None

    def describe(self) -> str:
        if self.passed:
            return f"pass ({self.checked} identities checked)"
        f = self.failure
        return (
            f"FAIL {f['family']} identity at (i,j)=({f['i']},{f['j']}), "
            f"s={f['s']}, t={f['t']}"
        )


def verify_cosimplicial_identities(
    C: CoalgebraPresentation, window: BidegreeWindow, twist_sign: int = 1
) -> IdentityReport:
    """Check all coface/codegeneracy identities as matrix identities in the window."""
    cache: dict = {}

    def cf(i, s, t):
        key = ("d", i, s, t)
        if key not in cache:
            cache[key] = coface(C, i, s, t, twist_sign)
        return cache[key]

    def cd(i, s, t):
        key = ("s", i, s, t)
        if key not in cache:
            cache[key] = codegeneracy(C, i, s, t)
        return cache[key]

    checked = 0

    def fail(family, i, j, s, t):
        return IdentityReport(
            passed=False, checked=checked,
            failure={"family": family, "i": i, "j": j, "s": s, "t": t},
        )

    max_s, max_t = window.max_s, window.max_t
    # coface-coface: delta_j . delta_i = delta_i . delta_{j-1} for i < j
    for s in range(max_s):
        for i in range(s + 2):
            for j in range(i + 1, s + 3):
                for t in range(max_t + 1):
                    lhs = cf(j, s + 1, t).compose(cf(i, s, t))
                    rhs = cf(i, s + 1, t).compose(cf(j - 1, s, t))
                    checked += 1
                    if not lhs.equals(rhs):
                        return fail("coface-coface", i, j, s, t)
    # codegeneracy-codegeneracy: sigma_j . sigma_i = sigma_i . sigma_{j+1} for i <= j
    for s in range(max_s):
        for i in range(s + 2):
            for j in range(i, s + 1):
                for t in range(max_t + 1):
                    lhs = cd(j, s, t).compose(cd(i, s + 1, t))
                    rhs = cd(i, s, t).compose(cd(j + 1, s + 1, t))
                    checked += 1
                    if not lhs.equals(rhs):
                        return fail("codegeneracy-codegeneracy", i, j, s, t)
    # mixed: sigma_j . delta_i
    for s in range(max_s + 1):
        for i in range(s + 2):
            for j in range(s + 1):
                for t in range(max_t + 1):
                    lhs = cd(j, s, t).compose(cf(i, s, t))
                    if i == j or i == j + 1:
                        n = len(tensor_basis(C, s, t, normalized=False))
                        rhs = SparseMatrix.identity(C.field, n)
                    elif i < j:
                        rhs = cf(i, s - 1, t).compose(cd(j - 1, s - 1, t))
                    else:
                        rhs = cf(i - 1, s - 1, t).compose(cd(j, s - 1, t))
                    checked += 1
                    if not lhs.equals(rhs):
                        return fail("mixed", i, j, s, t)
    return IdentityReport(passed=True, checked=checked)
