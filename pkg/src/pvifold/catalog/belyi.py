"""Belyi maps around the type 39 / type 47 pair and their branching patterns.

Curves, as function fields over Q(s):

* ``C39``: ``u^2 = 3(s+3)(4s^2-s+1)`` carrying ``t39``;
* ``C47``: ``v^2 = s(s+1)(s-2)(s+3)`` carrying ``t47`` (it does not need ``w``);
* ``Ctau``: both roots, carrying ``t39``, ``t47`` and the degree 15 function
  ``tau = sqrt(t39/(t39-1))`` onto the intermediate line.
"""

from __future__ import annotations

from ..algebra.textform import element_to_text, parse_canonical, parse_tower
from ..algebra.tower import Tower, TowerElement
from .branching import BranchPattern, branching
from .entries import load_entry

C39_REL = "u^2 = 12*s^3 + 33*s^2 - 6*s + 9"
C47_REL = "v^2 = s^4 + 2*s^3 - 5*s^2 - 6*s"


def restrict(x: TowerElement, tower: Tower) -> TowerElement:
    """Re-read ``x`` in another tower with the same generator names."""
    return parse_canonical(element_to_text(x), tower)


def curve_functions() -> dict[str, TowerElement]:
    t39 = load_entry("boalch-39").solution.t
    t47 = load_entry("boalch-47").solution.t
    c47 = parse_tower([C47_REL], "s")
    ctau = parse_tower([C39_REL, C47_REL], "s")
    t39_tau = restrict(t39, ctau)
    tau = (t39_tau / (t39_tau - 1)).sqrt()
    if tau is None:
        raise ArithmeticError("t39/(t39-1) is not a square on the composite curve")
    return {"t39": t39, "t47": restrict(t47, c47), "tau": tau,
            "t39@Ctau": t39_tau, "t47@Ctau": restrict(t47, ctau)}


# fibers over which each map is branched; tau branches over 0, 1, -1, infinity
BOX_FIBERS = {"t39": ("0", "1", "inf"), "t47": ("0", "1", "inf"), "tau": ("0", "inf", "1", "-1"),
              "t39@Ctau": ("0", "1", "inf"), "t47@Ctau": ("0", "1", "inf")}


def box_patterns(names=None, dps: int = 50) -> dict[str, BranchPattern]:
    funcs = curve_functions()
    names = names or list(BOX_FIBERS)
    return {n: branching(funcs[n], n, dps=dps, fibers=BOX_FIBERS[n], orbits=False) for n in names}


def multiset_columns(pattern: BranchPattern) -> list[tuple[int, ...]]:
    """Fiber multiplicity lists, ordered so comparison ignores which fiber is which."""
    return sorted(pattern.fibers.values())


__all__ = ["curve_functions", "box_patterns", "multiset_columns", "restrict", "BOX_FIBERS"]
