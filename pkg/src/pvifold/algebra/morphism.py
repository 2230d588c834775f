"""Field maps between towers given by images of the base variable and generators."""

from __future__ import annotations

from .numeric import _eval_data
from .ratfunc import RatFunc
from .tower import Tower, TowerElement, TowerError


def _poly_at(coeffs, x, one):
    acc = None
    for c in reversed(coeffs):
        acc = one * c if acc is None else acc * x + c
    return acc if acc is not None else one * 0


class TowerMap:
    """Substitution ``base -> base_image``, ``g_i -> gen_images[i]`` into ``target``.

    The caller is responsible for the images satisfying the relations;
    :meth:`check` verifies them exactly.
    """

    def __init__(self, source: Tower, target: Tower, base_image: TowerElement, gen_images):
        self.source = source
        self.target = target
        self.base_image = base_image.lift(target)
        self.gen_images = [g.lift(target) for g in gen_images]
        if len(self.gen_images) != source.level:
            raise TowerError("one image per generator is required")
        self._leaf_cache: dict = {}

    def _leaf(self, r: RatFunc) -> TowerElement:
        key = id(r)
        hit = self._leaf_cache.get(key)
        if hit is not None and hit[0] is r:
            return hit[1]
        one = self.target.one()
        num = _poly_at(r.num.coeffs(), self.base_image, one)
        den = _poly_at(r.den.coeffs(), self.base_image, one)
        val = num / den
        self._leaf_cache[key] = (r, val)
        return val

    def _apply(self, x, k):
        if x is None:
            return self.target.zero()
        if k == 0:
            return self._leaf(x)
        a = self._apply(x[0], k - 1)
        if x[1] is None:
            return a
        return a + self._apply(x[1], k - 1) * self.gen_images[k - 1]

    def __call__(self, x: TowerElement) -> TowerElement:
        x = x.lift(self.source) if x.tower is not self.source else x
        return self._apply(x.data, self.source.level)

    def check(self) -> bool:
        """Every generator image squares to the image of its radicand."""
        for i, g in enumerate(self.gen_images):
            rad = self._apply(self.source.gens[i].radicand, i) if i else self._apply(self.source.gens[i].radicand, 0)
            if g * g != rad:
                return False
        return True

    def numeric(self, x: TowerElement, point, target_gens):
        """Evaluate the image of ``x`` numerically without forming it exactly.

        ``target_gens`` are numeric generator values of the target tower at
        ``point``; base and generator images are evaluated first and the source
        expression is then evaluated at those values.
        """
        base_val = _eval_data(self.base_image.data, self.target.level, target_gens, point)
        gen_vals = [_eval_data(g.data, self.target.level, target_gens, point) for g in self.gen_images]
        x = x.lift(self.source) if x.tower is not self.source else x
        return _eval_data(x.data, self.source.level, gen_vals, base_val)


def pullback(source: Tower, base_image: TowerElement, signs=None) -> TowerMap:
    """Map ``source`` into a tower over ``base_image``'s tower.

    Each generator goes to a square root of its mapped radicand, adjoining
    a simplified root when none exists yet; ``signs`` picks the root signs.
    """
    tower = base_image.tower
    signs = signs or (1,) * source.level
    images: list[TowerElement] = []
    for i, g in enumerate(source.gens):
        prefix_map = TowerMap(source.prefix(i), tower, base_image, images)
        rad = prefix_map(TowerElement(source.prefix(i), g.radicand))
        tower, root = tower.adjoin_sqrt(rad)
        images = [x.lift(tower) for x in images] + [root * signs[i]]
        base_image = base_image.lift(tower)
    return TowerMap(source, tower, base_image, images)
