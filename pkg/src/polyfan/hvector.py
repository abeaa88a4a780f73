"""Generalized h- and g-polynomials of complete fans.

The two polynomials satisfy a mutual recursion: h of a complete fan sums
(x-1)^codim * g over all cones, and g of a cone truncates (1-x) times h
of the quotient fan of its boundary below half its dimension.  Simplicial
cones short-circuit to g = 1, and g values are memoized per face-poset
isomorphism class, since they only depend on the poset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fans import Fan, FanError, face_fan
from .polynomials import (
    IntPoly,
    binomial_poly,
    is_palindromic,
    is_unimodal,
    padd,
    pmul,
    psub,
    truncate_below,
    x_minus_one_power,
)
from .polytopes import Polytope
from .posets import IsomorphismMemo

_g_memo = IsomorphismMemo()


def g_polynomial(fan: Fan, cone_id: int) -> IntPoly:
    """g-polynomial of a cone of the fan.

    Simplicial cones (the zero cone included) have g = 1.  Otherwise
    g = tau_{< ceil(d/2)}((1 - x) * h(quotient fan)), i.e. degrees up to
    floor((d-1)/2) survive; the ceiling reading of the half-dimension
    bracket is forced by g = 1 on rays.
    """
    if fan.is_simplicial_cone(cone_id):
        return (1,)
    poset = fan.face_poset(cone_id)
    cached = _g_memo.get(poset)
    if cached is not None:
        return cached
    d = fan.cones[cone_id].dim
    quotient_h = h_polynomial(fan.quotient_fan(cone_id))
    value = truncate_below(pmul((1, -1), quotient_h), (d + 1) // 2)
    _g_memo.put(poset, value)
    return value


def h_polynomial(fan: Fan) -> IntPoly:
    """Generalized h-polynomial of a complete fan."""
    if not fan.is_complete():
        raise FanError("h-polynomial requires a complete fan")
    n = fan.dim
    total: IntPoly = ()
    for cid in fan.cone_ids():
        term = pmul(
            x_minus_one_power(n - fan.cones[cid].dim), g_polynomial(fan, cid)
        )
        total = padd(total, term)
    return total


def h_simplicial(fan: Fan) -> IntPoly:
    """h-polynomial of a simplicial complete fan, computed without the
    recursion: the sum of (x-1)^codim over all cones."""
    if not fan.is_complete():
        raise FanError("h-polynomial requires a complete fan")
    if not fan.is_simplicial():
        raise FanError("h_simplicial requires a simplicial fan")
    n = fan.dim
    total: IntPoly = ()
    for cid in fan.cone_ids():
        total = padd(total, x_minus_one_power(n - fan.cones[cid].dim))
    return total


@dataclass(frozen=True)
class BoundsReport:
    """h-vector of a centrally symmetric polytope against (1+x)^n."""

    dim: int
    h: IntPoly
    difference: IntPoly  # h - (1+x)^n
    palindromic: bool
    unimodal: bool
    nonnegative_even_difference: bool
    difference_palindromic: bool
    difference_unimodal: bool
    is_minimum: bool
    is_cross_polytope: bool

    def all_bounds_hold(self) -> bool:
        checks = [
            self.palindromic,
            self.unimodal,
            self.nonnegative_even_difference,
            self.difference_palindromic,
            self.difference_unimodal,
        ]
        if self.is_minimum:
            checks.append(self.is_cross_polytope)
        return all(checks)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "h": list(self.h),
            "difference": list(self.difference),
            "palindromic": self.palindromic,
            "unimodal": self.unimodal,
            "nonnegative_even_difference": self.nonnegative_even_difference,
            "difference_palindromic": self.difference_palindromic,
            "difference_unimodal": self.difference_unimodal,
            "is_minimum": self.is_minimum,
            "is_cross_polytope": self.is_cross_polytope,
        }


def check_cs_bounds(p: Polytope) -> BoundsReport:
    """h-vector lower-bound report for a centrally symmetric polytope.

    The difference h - (1+x)^n is reported with its nonnegativity,
    evenness, palindromicity and unimodality flags; is_minimum means the
    difference vanishes, which must coincide with P being a linear image
    of the cross-polytope.
    """
    if not p.is_centrally_symmetric():
        raise ValueError("check_cs_bounds requires a centrally symmetric polytope")
    n = p.ambient_dim
    h = h_polynomial(face_fan(p))
    difference = psub(h, binomial_poly(n))
    return BoundsReport(
        dim=n,
        h=h,
        difference=difference,
        palindromic=is_palindromic(h, n),
        unimodal=is_unimodal(h),
        nonnegative_even_difference=all(
            c >= 0 and c % 2 == 0 for c in difference
        ),
        difference_palindromic=is_palindromic(difference, n),
        difference_unimodal=is_unimodal(difference),
        is_minimum=not difference,
        is_cross_polytope=p.is_cross_polytope(),
    )
