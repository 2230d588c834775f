"""Compact transcriptions of the catalog solutions.

Expressions are written the way they are usually typeset: implicit
multiplication, ``^`` for powers and ``sqrt(...)`` for square roots that
exist in the tower.  :func:`explicit` turns them into parser input.  The
canonical fixtures under ``fixtures/`` are generated from these with
``scripts/build_fixtures.py`` and are what the package loads at run time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_TOKEN = re.compile(r"\s*(sqrt|r5|K\d|\d+|[A-Za-z]|\*\*|[-+*/^()])")
_OPERAND_END = re.compile(r"^(\d+|r5|K\d|[A-Za-z]|\))$")
_OPERAND_START = re.compile(r"^(\d+|sqrt|r5|K\d|[A-Za-z]|\()$")


def explicit(text: str) -> str:
    """Insert the ``*`` signs left implicit in typeset formulas."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot tokenize {text[pos:pos + 20]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    out = []
    for tok in tokens:
        if out and _OPERAND_END.match(out[-1]) and _OPERAND_START.match(tok):
            out.append("*")
        out.append(tok)
    return "".join(out)


@dataclass
class Source:
    id: str
    descriptor: str
    theta: tuple[str, str, str, str]
    base: str
    tower: list[tuple[str, str]]
    t: str
    y: str
    degree: int | None = None
    genus: int | None = None
    defs: dict[str, str] = field(default_factory=dict)
    alt_t: list[str] = field(default_factory=list)
    # longer forms equal to 1 - t rather than t
    complement_t: list[str] = field(default_factory=list)


T39 = "1/2 - (2s^7-18s^6+48s^5-50s^4+105s^3+3s^2-7s-3)u/(18(s^2-4s-1)(4s^2-s+1)^2)"
U39 = [("u", "3(s+3)(4s^2-s+1)")]
VW = [("v", "s(s+1)(s-2)(s+3)"), ("w", "s(s-2)(s+3)(s-5)")]
T47 = "1/2 - (2s^7-18s^6+48s^5-50s^4+105s^3+3s^2-7s-3)v/(4s^2(s+1)^3(s-2)^3(s-5))"
QV = [("V", "-(q^2+1)(q^2+5)(q^2-4)")]
T47Q = "1/2 - (q^14+17q^12+111q^10+370q^8+815q^6+1077q^4+169q^2+32)V/(108q^2(q^2+1)^3(q^2+5)^2)"
T31 = "(s+1)^5(s-3)^3(s^2+4s-1)/(256s^3(s^2-5))"
U44 = [("u", "(q^2+1)(q^2-4q+9)")]
T44 = ("1/2 + (q^10-10q^9+45q^8-120q^7+190q^6+4q^5-410q^4+680q^3+25q^2-90q-27)"
       "/(2(q^2-4q-1)(q^2+1)u^3)")
PR50 = [("p", "-(2q+1)/(q^2-2q+5)"), ("r", "-q(q-2)/(q^2-2q+5)")]
T50 = ("1/2 + (32p^6+32p^4r^2+56p^4+64p^2r^2-4p^2-68r^2+q^4-4q^3-6q^2+20q-3)"
       "/(16p^3rq(q-2)^2)")
T50_PR = ("1/2 + (32r^6p^4-36r^6p^2-36r^2p^6+32r^4p^6-38r^6-30r^4p^2-30r^2p^4-38p^6-13r^4+6p^2r^2-13p^4)"
          "/(40pr(p^2+1)(r^2+1)(5p^2+5r^2+1))")
T50_COMPACT = ("5(p-r)^2(p+r-1)^3(p+r+1)^3(3p^2+3r^2-2pr+1)"
               "/(128pr(p^2+1)(r^2+1)(5p^2+5r^2+1))")
R5 = [("r5", "5")]
V49 = [("v", "3(q^4+14q^2+1)(5q^4+6q^2+5)")]
PR52 = [("p", "(q+r5)(3q^2+1)/(2(q-r5)(q^2+1))"),
        ("r", "-(r5q-1)(q^2+3)/(2(r5q+1)(q^2+1))")]


SOURCES: list[Source] = [
    Source(
        "hitchin-dihedral", "dihedral solution with all four exponent differences one half",
        ("1/2", "1/2", "1/2", "1/2"), "s", [],
        t="s^3(s+2)/(2s+1)", y="-s", degree=4, genus=0),
    Source(
        "hitchin-hat", "quadratic companion of the dihedral solution",
        ("0", "1", "1", "1"), "u", [],
        t="u^3(u+2)/(2u+1)", y="u(2u+1)/(u+2)", degree=4, genus=0),
    Source(
        "boalch-39", "icosahedral type 39 on an elliptic curve",
        ("1/3", "1/3", "4/5", "4/5"), "s", U39,
        t=T39, y="1/2 + (14s^5-79s^4+6s^3+80s^2+116s-9)/(6(s-1)(s^2-4s-1)u)",
        degree=15, genus=1),
    Source(
        "boalch-39-tilde", "Okamoto image of type 39 with two vanishing exponents",
        ("0", "0", "7/15", "13/15"), "s", U39,
        t=T39, y="1/2 - (2s^2-5s-1)u/(6(s-1)(4s^2-s+1))", degree=15, genus=1),
    Source(
        "boalch-40", "icosahedral type 40, sibling of type 39",
        ("2/5", "2/5", "2/3", "2/3"), "s", U39,
        t=T39, y="1/2 + (2s^6-14s^5+17s^4+16s^3-112s^2-2s-3)/(2u(3s-1)(s^2-4s-1))",
        degree=15, genus=1),
    Source(
        "boalch-47", "icosahedral type 47 on a fiber product of two elliptic curves",
        ("1/2", "1/2", "1/3", "4/5"), "s", VW,
        t=T47,
        y="1/2 - (3s^7-27s^6+107s^5-205s^4+105s^3-37s^2-7s-3)v"
          "/(2s(s+1)(s-2)^2(s-1)(3s^4-12s^3-14s^2-12s+3))"
          " - (4s^2-s+1)(s^2-4s-1)(7s^4-52s^3+34s^2-36s+15)"
          "/(2s(s-2)^2(s-1)(3s^4-12s^3-14s^2-12s+3)sqrt((s+1)^3(s-5)))",
        degree=30, genus=2),
    Source(
        "boalch-47-q", "icosahedral type 47 in hyperelliptic coordinates",
        ("1/2", "1/2", "1/3", "4/5"), "q", QV,
        t=T47Q,
        y="1/2 - (q^2-1)^2(q^4+7q^2+16)(q^4+7q^2+1)(q^8+8q^6+28q^4+36q^2-10)"
          "/(6q(q^2+1)^2(q^2+2)(q^2+5)(q^8+8q^6+60q^4+176q^2-2))"
          " - (5q^14+85q^12+555q^10+1715q^8+2590q^6+1902q^4+1574q^2+322)V"
          "/(6(q^2+1)^2(q^2+2)(q^2+5)(q^8+8q^6+60q^4+176q^2-2))",
        degree=30, genus=2),
    Source(
        "boalch-47-sym", "type 47 variant with the hyperelliptic symmetry",
        ("1/2", "1/2", "1/5", "1/3"), "q", QV,
        t=T47Q,
        y="1/2 + (3q^14+51q^12-6q^11+337q^10-84q^9+1168q^8-366q^7+2767q^6-534q^5+3821q^4"
          "-276q^3+413q^2-30q+80)V/(8q(q^2+1)(q^2+5)(q^10+10q^8-45q^7+25q^6-315q^5+35q^4"
          "-495q^3+80q^2-225q+11))",
        degree=30, genus=2),
    Source(
        "boalch-48", "icosahedral type 48, sibling of type 47",
        ("1/2", "1/2", "2/5", "2/3"), "s", VW,
        t=T47,
        y="1/2 - (19s^6-138s^5+195s^4+380s^3+195s^2-138s-89)v"
          "/(2(s+1)^2(s-2)(19s^5-155s^4+390s^3-590s^2-5s-3))"
          " + 9(4s^2-s+1)(s^2-4s-1)(s^5-7s^4+13s^3-115s^2-2s-10)"
          "/(2(s+1)^2(19s^5-155s^4+390s^3-590s^2-5s-3)sqrt(s(s-2)^3(s+3)(s-5)))",
        degree=30, genus=2),
    Source(
        "boalch-48-q", "icosahedral type 48 in hyperelliptic coordinates",
        ("1/2", "1/2", "2/5", "2/3"), "q", QV,
        t=T47Q,
        y="1/2 + (q^15+2q^14+17q^13+30q^12+103q^11+154q^10+242q^9+276q^8+K0)"
          "/(12q(q^2+1)(4q^5+7q^4+28q^3+34q^2+34q+7)V)",
        defs={"K0": "63q^7-806q^6-1327q^5-3322q^4-2295q^3-926q^2-260q-160"},
        degree=30, genus=2),
    Source(
        "boalch-31", "icosahedral type 31 with all exponent differences one fifth",
        ("1/5", "1/5", "1/5", "1/5"), "s", [],
        t=T31, y="-(s+1)^4(s-3)^2/(4s(s^2+3)(s^2-5))", degree=10, genus=0),
    Source(
        "boalch-32", "icosahedral type 32 with all exponent differences two fifths",
        ("2/5", "2/5", "2/5", "2/5"), "s", [],
        t=T31, y="-(s+1)^2(s-3)^2(s^2+4s+7)/(48s(s^2-5))", degree=10, genus=0),
    Source(
        "boalch-41", "icosahedral type 41 with all exponent differences one third",
        ("1/3", "1/3", "1/3", "1/3"), "s", [("u", "s(8s^2-11s+8)")],
        t="1/2 + (s+1)(32s^8-320s^7+1112s^6-2420s^5+3167s^4-2420s^3+1112s^2-320s+32)"
          "/(54u^3s(s-1))",
        y="1/2 - (8s^7-28s^6+75s^5+31s^4-269s^3+318s^2-166s+56)/(18u(s-1)(3s^3-4s^2+4s+2))",
        degree=18, genus=1),
    Source(
        "boalch-44", "icosahedral type 44 on an elliptic curve",
        ("1/2", "1/2", "1/5", "1/5"), "q", U44,
        t=T44,
        y="1/2 + (7q^10-70q^9+329q^8-908q^7+1494q^6+24q^5-3310q^4+5692q^3+211q^2-418q-171)"
          "/(2(q^2-4q-1)(7q^6-28q^5+91q^4-88q^3+229q^2-76q+57)u)",
        degree=20, genus=1),
    Source(
        "boalch-45", "icosahedral type 45, sibling of type 44",
        ("1/2", "1/2", "2/5", "2/5"), "q", U44,
        t=T44,
        y="1/2 + (3q^10-24q^9+93q^8-216q^7+446q^6+320q^5-1342q^4+2824q^3+527q^2-312q-207)"
          "/(6(q^2-4q-1)(q^4-2q^3+8q^2+10q+23)(q^2+1)u)",
        degree=20, genus=1),
    Source(
        "boalch-49", "icosahedral type 49 on a hyperelliptic genus 3 curve",
        ("1/2", "1/2", "1/3", "1/3"), "q", R5 + V49,
        t="1/2 + q(1125q^16+7000q^14+26124q^12+11112q^10-25186q^8+11112q^6+26124q^4+7000q^2+1125)"
          "/((q^2-1)(5q^4+6q^2+5)v^3)",
        y="1/2 + (8qK1+r5(q^2-1)(q^2+1)(3q^2+1)(q^2+3)(q^4+14q^2+1)(5q^6+53q^4-9q^2+15))"
          "/(4v(q^2-1)(K2+8r5q(q^2-1)(q^2+1)^2(3q^2+1)(q^2+3)))",
        defs={"K1": "200q^16+1367q^14+4835q^12+3643q^10-1609q^8+2933q^6+4025q^4+825q^2+165",
              "K2": "35q^12+450q^10+1097q^8+1324q^6+805q^4+370q^2+15"},
        degree=36, genus=3),
    Source(
        "boalch-50", "icosahedral type 50 on a plane quartic",
        ("1/2", "1/2", "1/2", "4/5"), "q", PR50,
        t=T50_COMPACT,
        y="1/2 + p(rK3-40p^4-200p^2r^2+355r^2+261p^2+2q^5-6q^4-15q^3+23q^2-33q+52)"
          "/(q(q-2)(2q+1)(3p^2+r^2+2r+1)(5r^3+7p^2r-3p^2q+11p^2+2r))",
        defs={"K3": "440p^4+200p^2r^2+952p^2+760r^2+4q^5-22q^4+15q^3+66q^2+89q+174"},
        complement_t=[T50, T50_PR], degree=40, genus=3),
    Source(
        "boalch-51", "icosahedral type 51, sibling of type 50",
        ("1/2", "1/2", "1/2", "3/5"), "q", PR50,
        t=T50_COMPACT,
        y="1/2 - (120p^5+200p^3r^2-120p^4-200p^2r^2+132p^3+460pr^2-180p^2-100r^2+K4)"
          "/(2r(2q+1)(24p^3+40pr^2-48p^2-80r^2+2pq^2+12pq+2p-7q^2-2q-11))",
        defs={"K4": "p(q^5-6q^4+7q^3+12q^2-126q+24)-q^5+6q^4-4q^3-24q^2-33q-30"},
        complement_t=[T50, T50_PR], degree=40, genus=3),
    Source(
        "boalch-52", "icosahedral type 52 on a genus 7 curve",
        ("1/2", "1/2", "1/2", "2/3"), "q", R5 + PR52,
        t="1/2 - (p^2+r^2-1)(p^8-7p^6r^2-24p^4r^4-7p^2r^6+r^8+6p^4r^2+6p^2r^4+14p^4+p^2r^2"
          "+14r^4+16p^2+16r^2+17)/(96p^3r^3(p^2+r^2+1))",
        y="1/2 + (K5-4800p^6-28160p^4+8704q^2r^2-6240q^4-60352p^2-9736q^2-7288"
          "-5r(966q^4-512r^2+608q^2-982))"
          "/(4r5pr^2(q+r5)(r5q+1)^2(K6-60p^2-48q^2+22-20r(p^2q^2+3p^2+4)))",
        defs={"K5": "(96q^2r^6-17256p^4q^4+288r^6-4992p^4r^2-14400p^6-2175q^6-5504p^2r^2-1752p^4"
                    "-39859q^4+51136p^2-6805q^2+25703-5r(3360p^6q^2+5312p^4q^4-1024r^4q^4+6240p^6"
                    "+12768p^4q^2-285q^6+5600p^4-2088r^2q^2+8319q^4-504r^2-4819q^2+1))/(r5q)",
              "K6": "(228q^2r^4-16r^2q^2-228p^2r^2-148p^2-56r^2-369q^2-281"
                    "-20r(3r^2q^2+12p^2+5r^2+11q^2+9))/(r5q)"},
        degree=72, genus=7),
]

SOURCE_IDS = [src.id for src in SOURCES]


def source(entry_id: str) -> Source:
    for src in SOURCES:
        if src.id == entry_id:
            return src
    raise KeyError(entry_id)


# Coordinate identifications used by the cascade checks.  Each maps the
# target entry's base variable into the transform output; generator images
# are recovered as square roots there.  ``sqrt`` sites carry a sign chosen
# by search.
@dataclass
class Cascade:
    source: str
    target: str
    pipeline: str
    base_image: str


CASCADES: list[Cascade] = [
    Cascade("boalch-39", "boalch-47", "kitaevB", "s"),
    Cascade("boalch-40", "boalch-48", "kitaevB", "s"),
    Cascade("boalch-31", "boalch-44", "kitaevB", "(s^2-1+sqrt(s^4-18s^2+1))/4"),
    Cascade("boalch-32", "boalch-45", "kitaevB", "(s^2-1+sqrt(s^4-18s^2+1))/4"),
    Cascade("boalch-44", "boalch-50", "fl[p2],kitaevB", "q"),
    Cascade("boalch-45", "boalch-51", "fl[p2],kitaevB", "q"),
    Cascade("boalch-41", "boalch-49", "kitaevB", "(-3(s-1)+2sqrt(s^2-7s+1))/(sqrt(5)(s+1))"),
    Cascade("boalch-49", "boalch-52", "fl[p2],kitaevB", "q"),
]

# Change of coordinates between the two forms of types 47 and 48.
HYPERELLIPTIC_FORMS = {
    "boalch-47-q": ("boalch-47", {"s": "(q^2+5)/(1-q^2)", "v": "6V/(q^2-1)^2", "w": "6qV/(q^2-1)^2"}),
    "boalch-48-q": ("boalch-48", {"s": "(q^2+5)/(1-q^2)", "v": "6V/(q^2-1)^2", "w": "6qV/(q^2-1)^2"}),
}
