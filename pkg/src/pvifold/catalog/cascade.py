"""Check that a transform pipeline applied to one catalog entry yields another.

The target's base variable is expressed in the output coordinates by a short
formula.  Generator images are square roots of the mapped radicands;
their signs (and the signs of square roots in the base formula) are searched
numerically at one point, and the surviving choice is confirmed exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

import mpmath as mp

from ..algebra.morphism import TowerMap, pullback
from ..algebra.numeric import PoleError, _eval_data, generator_values
from ..algebra.textform import parse_expr
from ..algebra.tower import Tower, TowerElement
from ..pvi import ParamSolution, theta_equivalent
from ..transforms.pipeline import apply_pipeline
from .entries import CatalogEntry, load_entry, parse_source_expr
from .sources import CASCADES, HYPERELLIPTIC_FORMS, Cascade, explicit, source

SCREEN_POINTS = ("37/23", "5/11", "13/4")


@dataclass
class CascadeResult:
    source: str
    target: str
    pipeline: str
    matched: bool
    theta_ok: bool
    mode: str
    identification: dict = field(default_factory=dict)
    detail: str = ""
    seconds: float = 0.0

    def to_text(self) -> str:
        status = "PASS" if self.matched else "FAIL"
        ident = ", ".join(f"{k} -> {v}" for k, v in self.identification.items())
        return (f"{status} {self.source} --[{self.pipeline}]--> {self.target} mode={self.mode} "
                f"{ident}{' ' + self.detail if self.detail else ''}")


class _SqrtSites:
    """sqrt hook that records each root taken and applies a chosen sign."""

    def __init__(self, tower: Tower, signs=()):
        self.tower = tower
        self.signs = list(signs)
        self.count = 0

    def __call__(self, arg: TowerElement) -> TowerElement:
        self.tower, root = self.tower.adjoin_sqrt(arg.lift(self.tower) if arg.tower.is_prefix_of(self.tower)
                                                  else arg)
        sign = self.signs[self.count] if self.count < len(self.signs) else 1
        self.count += 1
        return root * sign


def _base_image(text: str, tower: Tower, signs=()):
    hook = _SqrtSites(tower, signs)
    img = parse_expr(explicit(text), tower, sqrt_hook=hook)
    return img.lift(hook.tower), hook.count


def _numeric_gap(out: ParamSolution, tmap: TowerMap, tgt: ParamSolution, point) -> mp.mpf:
    tower = tmap.target
    gens = generator_values(tower, point)
    lvl = tower.level
    t_out = _eval_data(out.t.lift(tower).data, lvl, gens, point)
    y_out = _eval_data(out.y.lift(tower).data, lvl, gens, point)
    t_img = tmap.numeric(tgt.t.lift(tmap.source), point, gens)
    y_img = tmap.numeric(tgt.y.lift(tmap.source), point, gens)
    return max(abs(t_out - t_img), abs(y_out - y_img)) / max(1, abs(t_out) + abs(y_out))


def identify(out: ParamSolution, target: CatalogEntry, base_image: str, dps: int = 40,
             exact: bool = True):
    """Search for a map of the target's function field into the output tower.

    Returns ``(tower_map, mode)`` or ``(None, reason)``.
    """
    tower0 = out.tower
    _, sites = _base_image(base_image, tower0)
    tgt = target.solution
    ttower = tgt.tower
    candidates = []
    for site_signs in product((1, -1), repeat=sites):
        base_img, _ = _base_image(base_image, tower0, site_signs)
        for gen_signs in product((1, -1), repeat=ttower.level):
            tmap = pullback(ttower, base_img, gen_signs)
            candidates.append((site_signs, gen_signs, tmap))
    with mp.workdps(dps):
        survivors = []
        for site_signs, gen_signs, tmap in candidates:
            for ptext in SCREEN_POINTS:
                num, den = (int(v) for v in ptext.split("/"))
                point = mp.mpf(num) / den
                try:
                    gap = _numeric_gap(out, tmap, tgt, point)
                    break
                except (PoleError, ZeroDivisionError):
                    continue
            else:
                continue
            if gap < mp.mpf(10) ** (-(dps // 2)):
                survivors.append((site_signs, gen_signs, tmap))
    if not survivors:
        return None, "no sign choice matches numerically"
    site_signs, gen_signs, tmap = survivors[0]
    if not exact:
        return tmap, "numeric"
    if not tmap.check():
        return None, "generator images fail their relations"
    tower = tmap.target
    if tmap(tgt.t) != out.t.lift(tower) or tmap(tgt.y) != out.y.lift(tower):
        return None, "numeric match not confirmed exactly"
    return tmap, "exact"


def check_cascade(cascade: Cascade, exact: bool = True, dps: int = 40) -> CascadeResult:
    start = time.perf_counter()
    src = load_entry(cascade.source)
    tgt = load_entry(cascade.target)
    out = apply_pipeline(src.solution, cascade.pipeline)
    theta_ok = theta_equivalent(out.theta, tgt.theta)
    tmap, mode = identify(out, tgt, cascade.base_image, dps=dps, exact=exact)
    ident = {}
    if tmap is not None:
        ident[tgt.tower.base] = cascade.base_image
        for g, img in zip(tgt.tower.gens, tmap.gen_images):
            ident[g.name] = str(img) if img.size() < 12 else f"sqrt of its mapped radicand"
    return CascadeResult(cascade.source, cascade.target, cascade.pipeline, tmap is not None and theta_ok,
                         theta_ok, mode if tmap is not None else "none", ident,
                         "" if tmap is not None else mode, time.perf_counter() - start)


def check_all_cascades(exact: bool = True) -> list[CascadeResult]:
    return [check_cascade(c, exact=exact) for c in CASCADES]


def check_hyperelliptic_form(entry_id: str) -> tuple[bool, tuple[int, ...]]:
    """The recorded change of coordinates carries the s-form onto the q-form.

    A ``sqrt(...)`` in the s-form fixes its sign only by convention,
    so generator images are tried with every sign, recorded signs first.
    Returns ``(matched, signs)``.
    """
    s_id, subs = HYPERELLIPTIC_FORMS[entry_id]
    q_entry, s_entry = load_entry(entry_id), load_entry(s_id)
    q_tower = q_entry.tower
    base_img = parse_expr(explicit(subs[s_entry.tower.base]), q_tower)
    gen_imgs = [parse_expr(explicit(subs[g.name]), q_tower) for g in s_entry.tower.gens]
    sol, ref = s_entry.solution, q_entry.solution
    for signs in product((1, -1), repeat=len(gen_imgs)):
        tmap = TowerMap(s_entry.tower, q_tower, base_img, [c * g for c, g in zip(signs, gen_imgs)])
        if not tmap.check():
            continue
        if tmap(sol.t) == ref.t.lift(q_tower) and tmap(sol.y) == ref.y.lift(q_tower):
            return True, signs
    return False, ()


def complement_forms_check(entry_id: str) -> bool:
    """Each longer recorded form of t equals 1 - t for the stored compact t."""
    src = source(entry_id)
    entry = load_entry(entry_id)
    tower = entry.tower
    t = entry.solution.t.lift(tower)
    return all(parse_source_expr(src, text, tower) == 1 - t for text in src.complement_t)


__all__ = ["CascadeResult", "identify", "check_cascade", "check_all_cascades", "check_hyperelliptic_form",
           "complement_forms_check"]
