"""Exact arithmetic in square-root towers over Q(s)."""

from .numeric import DEFAULT_DPS, BranchError, PoleError, eval_numeric
from .ratfunc import RatFunc
from .textform import ParseError, element_to_text, parse_expr, parse_rational, parse_tower, tower_to_text
from .tower import Tower, TowerElement, TowerError, base_tower

__all__ = [
    "RatFunc", "Tower", "TowerElement", "TowerError", "base_tower",
    "ParseError", "element_to_text", "parse_expr", "parse_rational", "parse_tower",
    "tower_to_text", "eval_numeric", "PoleError", "BranchError", "DEFAULT_DPS",
]
