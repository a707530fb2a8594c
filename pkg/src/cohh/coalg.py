"""Graded cocommutative coalgebra presentations with exact coproduct/counit.

Three cogenerator families are supported: polynomial (basis w^j, binomial
coproduct), exterior (basis 1, y with primitive coproduct), and divided power
(basis gamma_j(x), shuffle-free coproduct with unit coefficients).  Tensor
products of cogenerators expand multiplicatively with the Koszul sign rule:
transposing homogeneous factors u, v multiplies by (-1)^(|u||v|).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .exactfield import Field

POLYNOMIAL = "polynomial"
EXTERIOR = "exterior"
DIVIDED_POWER = "divided_power"
KINDS = (POLYNOMIAL, EXTERIOR, DIVIDED_POWER)


class UnknownCogenerator(KeyError):
    """An element references a cogenerator name that the presentation lacks."""


class NotConnected(ValueError):
    """Presentation has basis outside degree 0's single unit (degree < 1 cogenerator)."""


class ParityViolation(ValueError):
    """Exterior cogenerators must be odd, polynomial/divided-power even (char != 2)."""


@dataclass(frozen=True)
class Cogenerator:
    """One named cogenerator; truncation caps the exponent (divided powers: max j)."""

    name: str
    kind: str
    degree: int
    truncation: Optional[int] = None


@dataclass(frozen=True, order=True)
class Monomial:
    """Exponent vector over a presentation's cogenerator list, in list order.

    For exterior cogenerators the exponent is 0 or 1; for divided powers the
    exponent j stands for the basis element gamma_j.
    """

    exponents: tuple

    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exponents)


class CoalgebraPresentation:
    """A connected graded coalgebra given by typed cogenerators over a field."""

    def __init__(self, field: Field, cogenerators):
        self.field = field
        self.cogenerators = tuple(cogenerators)
        names = [c.name for c in self.cogenerators]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate cogenerator names in {names}")
        for cog in self.cogenerators:
            if cog.kind not in KINDS:
                raise ValueError(f"unknown cogenerator kind {cog.kind!r}")
            if cog.degree < 1:
                raise NotConnected(
                    f"cogenerator {cog.name} has degree {cog.degree}; "
                    "connectedness requires positive degrees"
                )
            if field.characteristic != 2:
                odd = cog.degree % 2 == 1
                if cog.kind == EXTERIOR and not odd:
                    raise ParityViolation(
                        f"exterior cogenerator {cog.name} must have odd degree, "
                        f"got {cog.degree}"
                    )
                if cog.kind in (POLYNOMIAL, DIVIDED_POWER) and odd:
                    raise ParityViolation(
                        f"{cog.kind} cogenerator {cog.name} must have even degree, "
                        f"got {cog.degree}"
                    )
            if cog.truncation is not None and cog.truncation < 1:
                raise ValueError(f"truncation of {cog.name} must be >= 1")
        self._index = {c.name: i for i, c in enumerate(self.cogenerators)}
        self._basis_cache: dict = {}
        self._coproduct_cache: dict = {}

    # -- monomials ---------------------------------------------------------

    def unit(self) -> Monomial:
        return Monomial((0,) * len(self.cogenerators))

    def monomial(self, exponents_by_name: dict) -> Monomial:
        exps = [0] * len(self.cogenerators)
        for name, e in exponents_by_name.items():
            if name not in self._index:
                raise UnknownCogenerator(name)
            exps[self._index[name]] = e
        m = Monomial(tuple(exps))
        self._validate_monomial(m)
        return m

    def _validate_monomial(self, m: Monomial):
        if len(m.exponents) != len(self.cogenerators):
            raise ValueError("monomial exponent vector has the wrong length")
        for cog, e in zip(self.cogenerators, m.exponents):
            if e < 0:
                raise ValueError(f"negative exponent on {cog.name}")
            if cog.kind == EXTERIOR and e > 1:
                raise ValueError(f"exterior exponent on {cog.name} exceeds 1")
            if cog.truncation is not None and e > cog.truncation:
                raise ValueError(f"exponent on {cog.name} exceeds truncation")

    def degree(self, m: Monomial) -> int:
        return sum(e * c.degree for e, c in zip(m.exponents, self.cogenerators))

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for cog, e in zip(self.cogenerators, m.exponents):
            if e == 0:
                continue
            if e == 1:
                parts.append(cog.name)
            elif cog.kind == DIVIDED_POWER:
                parts.append(f"gamma_{e}({cog.name})")
            else:
                parts.append(f"{cog.name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- basis enumeration ---------------------------------------------------

    def basis_in_degree(self, t: int) -> list:
        """All monomials of internal degree t, in lexicographic exponent order."""
        if t < 0:
            return []
        if t in self._basis_cache:
            return self._basis_cache[t]
        cogs = self.cogenerators
        out = []
        acc = [0] * len(cogs)

        def rec(idx: int, remaining: int):
            if idx == len(cogs):
                if remaining == 0:
                    out.append(Monomial(tuple(acc)))
                return
            cog = cogs[idx]
            cap = remaining // cog.degree
            if cog.kind == EXTERIOR:
                cap = min(cap, 1)
            if cog.truncation is not None:
                cap = min(cap, cog.truncation)
            for e in range(cap + 1):
                acc[idx] = e
                rec(idx + 1, remaining - e * cog.degree)
            acc[idx] = 0

        rec(0, t)
        self._basis_cache[t] = out
        return out

    # -- coproduct ----------------------------------------------------------

    def _single_coproduct(self, cog: Cogenerator, e: int) -> list:
        """Coproduct terms of one cogenerator power: [(left_exp, coefficient)]."""
        if cog.kind == POLYNOMIAL:
            terms = []
            for k in range(e + 1):
                c = self.field.scalar(comb(e, k))
                if not self.field.is_zero(c):
                    terms.append((k, c))
            return terms
        # exterior (e <= 1) and divided power both split with unit coefficients
        return [(k, self.field.one) for k in range(e + 1)]

    def coproduct_monomial(self, m: Monomial) -> dict:
        """Coproduct of a basis monomial as {(left, right): coefficient}."""
        if m in self._coproduct_cache:
            return self._coproduct_cache[m]
        self._validate_monomial(m)
        fld = self.field
        # partial terms: (left exps, right exps, right degree, coefficient)
        partial = [((), (), 0, fld.one)]
        for idx, (cog, e) in enumerate(zip(self.cogenerators, m.exponents)):
            nxt = []
            for left, right, rdeg, coeff in partial:
                for k, ck in self._single_coproduct(cog, e):
                    c = fld.mul(coeff, ck)
                    # Koszul sign: the left factor g^k crosses the right part
                    if (rdeg * k * cog.degree) % 2:
                        c = fld.neg(c)
                    nxt.append(
                        (left + (k,), right + (e - k,), rdeg + (e - k) * cog.degree, c)
                    )
            partial = nxt
        result: dict = {}
        for left, right, _, coeff in partial:
            key = (Monomial(left), Monomial(right))
            s = fld.add(result.get(key, fld.zero), coeff)
            if fld.is_zero(s):
                result.pop(key, None)
            else:
                result[key] = s
        self._coproduct_cache[m] = result
        return result


# -- linear-combination helpers ---------------------------------------------
# Elements are dicts mapping a Monomial (or tuple of Monomials, for tensor
# powers) to a nonzero scalar.


def add_term(acc: dict, key, coeff, fld: Field):
    s = fld.add(acc.get(key, fld.zero), coeff)
    if fld.is_zero(s):
        acc.pop(key, None)
    else:
        acc[key] = s


def coproduct(C: CoalgebraPresentation, element: dict) -> dict:
    """Linear extension of the coproduct: {Monomial: c} -> {(Monomial, Monomial): c}."""
    fld = C.field
    out: dict = {}
    for m, coeff in element.items():
        for key, c in C.coproduct_monomial(m).items():
            add_term(out, key, fld.mul(coeff, c), fld)
    return out


def counit(C: CoalgebraPresentation, element: dict):
    """Coefficient of the unit monomial (zero on positive-degree monomials)."""
    fld = C.field
    total = fld.zero
    for m, coeff in element.items():
        C._validate_monomial(m)
        if m.is_unit():
            total = fld.add(total, coeff)
    return total


def apply_coproduct_to_slot(C: CoalgebraPresentation, terms: dict, slot: int) -> dict:
    """Apply the coproduct to one slot of tensor-monomial terms.

    Keys are tuples of Monomials; the slot splits into two adjacent slots.
    The coproduct has degree 0, so no Koszul sign appears.
    """
    fld = C.field
    out: dict = {}
    for tup, coeff in terms.items():
        for (a, b), c in C.coproduct_monomial(tup[slot]).items():
            key = tup[:slot] + (a, b) + tup[slot + 1:]
            add_term(out, key, fld.mul(coeff, c), fld)
    return out


def coaction_as_bicomodule(C: CoalgebraPresentation):
    """Left and right coactions of C on itself: both are the coproduct."""

    def psi(element: dict) -> dict:
        return coproduct(C, element)

    def gamma(element: dict) -> dict:
        return coproduct(C, element)

    return psi, gamma


def coassociativity_ok(C: CoalgebraPresentation, max_t: int = 24) -> bool:
    """(coproduct x Id).coproduct == (Id x coproduct).coproduct on the basis."""
    for t in range(max_t + 1):
        for m in C.basis_in_degree(t):
            start = {(m,): C.field.one}
            once = apply_coproduct_to_slot(C, start, 0)
            if apply_coproduct_to_slot(C, once, 0) != apply_coproduct_to_slot(C, once, 1):
                return False
    return True


def counitality_ok(C: CoalgebraPresentation, max_t: int = 24) -> bool:
    """(counit x Id).coproduct == Id == (Id x counit).coproduct on the basis."""
    fld = C.field
    for t in range(max_t + 1):
        for m in C.basis_in_degree(t):
            left: dict = {}
            right: dict = {}
            for (a, b), c in C.coproduct_monomial(m).items():
                if a.is_unit():
                    add_term(left, b, c, fld)
                if b.is_unit():
                    add_term(right, a, c, fld)
            if left != {m: fld.one} or right != {m: fld.one}:
                return False
    return True


def cocommutativity_ok(C: CoalgebraPresentation, max_t: int = 24) -> bool:
    """twist.coproduct == coproduct, with the Koszul sign in the twist."""
    fld = C.field
    for t in range(max_t + 1):
        for m in C.basis_in_degree(t):
            expansion = C.coproduct_monomial(m)
            twisted: dict = {}
            for (a, b), c in expansion.items():
                if (C.degree(a) * C.degree(b)) % 2:
                    c = fld.neg(c)
                add_term(twisted, (b, a), c, fld)
            if twisted != expansion:
                return False
    return True


def bicomodule_square_commutes(C: CoalgebraPresentation, max_t: int) -> bool:
    """Check (Id x gamma).psi == (psi x Id).gamma on all basis monomials up to max_t.

    For the diagonal coactions this is coassociativity, but both composites are
    expanded independently here.
    """
    for t in range(max_t + 1):
        for m in C.basis_in_degree(t):
            start = {(m,): C.field.one}
            via_psi = apply_coproduct_to_slot(C, start, 0)          # psi
            lhs = apply_coproduct_to_slot(C, via_psi, 1)            # Id x gamma
            via_gamma = apply_coproduct_to_slot(C, start, 0)        # gamma
            rhs = apply_coproduct_to_slot(C, via_gamma, 0)          # psi x Id
            if lhs != rhs:
                return False
    return True
