"""Canonical text form of tower elements and a small exact expression parser.

Element text is ``(numerator)/(denominator)`` where the numerator is a sparse
sum of ``c*s^a*u1*u2`` terms and the denominator is a monic polynomial in the
base variable (omitted when it is 1).  Terms are ordered by generator
monomial (fewest generators first, then tower order) and, inside one
monomial, by descending power of the base variable.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from flint import fmpq, fmpq_poly

from .ratfunc import RatFunc, as_fmpq, fmpq_to_fraction


class ParseError(ValueError):
    pass


def _rat_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mask_key(mask: int, k: int):
    bits = [i for i in range(k) if mask >> i & 1]
    return (len(bits), bits)


def _lcm(a: fmpq_poly, b: fmpq_poly) -> fmpq_poly:
    g = a.gcd(b)
    return (a * b) // g


def _poly_terms(p: fmpq_poly, base: str, gen_part: str) -> list[tuple[Fraction, str]]:
    out = []
    coeffs = p.coeffs()
    for e in range(len(coeffs) - 1, -1, -1):
        c = fmpq_to_fraction(coeffs[e])
        if c == 0:
            continue
        mono = []
        if e == 1:
            mono.append(base)
        elif e > 1:
            mono.append(f"{base}^{e}")
        if gen_part:
            mono.append(gen_part)
        out.append((c, "*".join(mono)))
    return out


def _join_terms(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    parts = []
    for i, (c, mono) in enumerate(terms):
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_rat_text(a)}*{mono}"
        else:
            body = _rat_text(a)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def poly_to_text(p: fmpq_poly, base: str = "s") -> str:
    return _join_terms(_poly_terms(p, base, ""))


def element_to_text(x) -> str:
    tower = x.tower
    k = tower.level
    terms = x.terms()
    if not terms:
        return "0"
    den = fmpq_poly([1])
    for r in terms.values():
        den = _lcm(den, r.den)
    den = den / den.leading_coefficient()
    out = []
    for mask in sorted(terms, key=lambda m: _mask_key(m, k)):
        r = terms[mask]
        num = r.num * (den // r.den)
        gen_part = "*".join(tower.gens[i].name for i in range(k) if mask >> i & 1)
        out.extend(_poly_terms(num, tower.base, gen_part))
    text = _join_terms(out)
    if den.is_one():
        return text
    return f"({text})/({poly_to_text(den, tower.base)})"


def tower_to_text(tower) -> list[str]:
    from .tower import TowerElement
    lines = []
    for i, g in enumerate(tower.gens):
        rad = TowerElement(tower.prefix(i), g.radicand)
        lines.append(f"{g.name}^2 = {element_to_text(rad)}")
    return lines


# ---------------------------------------------------------------------------
# parsing


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer exactly; decimals are rejected."""
    text = text.strip()
    if any(ch in text for ch in ".eE") and not text.lstrip("+-").isdigit():
        raise ParseError(f"decimal input rejected: {text!r}")
    try:
        if "/" in text:
            p, q = text.split("/", 1)
            return Fraction(int(p), int(q))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


class _Evaluator:
    def __init__(self, tower, env, sqrt_hook):
        self.tower = tower
        self.env = env
        self.sqrt_hook = sqrt_hook

    def coerce(self, v):
        from .tower import TowerElement
        if isinstance(v, TowerElement):
            return v
        return self.tower.const(v)

    def visit(self, node):
        if isinstance(node, ast.Expression):
            return self.visit(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise ParseError(f"only integer literals are allowed, got {node.value!r}")
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id in self.env:
                return self.env[node.id]
            if node.id == self.tower.base:
                return self.tower.s
            if node.id in self.tower.names:
                return self.tower.gen(node.id)
            raise ParseError(f"unknown symbol {node.id!r}")
        if isinstance(node, ast.UnaryOp):
            v = self.visit(node.operand)
            if isinstance(node.op, ast.USub):
                return -v
            if isinstance(node.op, ast.UAdd):
                return v
            raise ParseError("unsupported unary operator")
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = self.visit(node.right)
                if not isinstance(e, Fraction) or e.denominator != 1:
                    raise ParseError("exponents must be integer literals")
                base = self.visit(node.left)
                if isinstance(base, Fraction):
                    return base ** int(e)
                return base ** int(e)
            left = self.visit(node.left)
            right = self.visit(node.right)
            if isinstance(node.op, ast.Add):
                return self._arith(left, right, lambda a, b: a + b)
            if isinstance(node.op, ast.Sub):
                return self._arith(left, right, lambda a, b: a - b)
            if isinstance(node.op, ast.Mult):
                return self._arith(left, right, lambda a, b: a * b)
            if isinstance(node.op, ast.Div):
                return self._arith(left, right, lambda a, b: a / b)
            raise ParseError("unsupported binary operator")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id != "sqrt" or len(node.args) != 1:
                raise ParseError("only sqrt(...) calls are allowed")
            arg = self.coerce(self.visit(node.args[0]))
            if self.sqrt_hook is not None:
                return self.sqrt_hook(arg)
            r = arg.sqrt()
            if r is None:
                raise ParseError(f"sqrt of a non-square in the tower: {arg}")
            return r
        raise ParseError(f"unsupported syntax: {ast.dump(node)}")

    def _arith(self, a, b, op):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return op(a, b)
        return op(self.coerce(a), self.coerce(b))


def parse_expr(text: str, tower, env: dict | None = None, sqrt_hook=None):
    """Parse an exact expression into an element of ``tower``.

    ``^`` is exponentiation; names resolve to ``env`` entries, then the base
    variable, then tower generators.  ``sqrt(x)`` must be an exact square in
    the tower unless ``sqrt_hook`` is supplied.
    """
    src = text.strip().replace("^", "**").replace("−", "-")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from exc
    ev = _Evaluator(tower, env or {}, sqrt_hook)
    try:
        return ev.coerce(ev.visit(tree))
    except ZeroDivisionError as exc:
        raise ParseError(f"division by zero in {text!r}") from exc


def _split_terms(text: str) -> list[str]:
    text = text.strip()
    out = []
    sign = ""
    if text.startswith("-"):
        sign, text = "-", text[1:]
    pieces = text.replace(" - ", " + -").split(" + ")
    pieces[0] = sign + pieces[0]
    for piece in pieces:
        out.append(piece.strip())
    return out


def _parse_poly_text(text: str, base: str, gens: tuple[str, ...]) -> dict[int, dict[int, Fraction]]:
    terms: dict[int, dict[int, Fraction]] = {}
    if text.strip() == "0":
        return terms
    for term in _split_terms(text):
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        coef = Fraction(1)
        exp = 0
        mask = 0
        for factor in term.split("*"):
            if not factor:
                raise ParseError(f"malformed term {term!r}")
            if factor[0].isdigit():
                coef *= parse_rational(factor)
            elif factor == base:
                exp += 1
            elif factor.startswith(base + "^") and factor[len(base) + 1:].isdigit():
                exp += int(factor[len(base) + 1:])
            elif factor in gens:
                bit = 1 << gens.index(factor)
                if mask & bit:
                    raise ParseError(f"repeated generator in {term!r}")
                mask |= bit
            else:
                raise ParseError(f"unexpected factor {factor!r} in canonical text")
        bucket = terms.setdefault(mask, {})
        bucket[exp] = bucket.get(exp, Fraction(0)) + (-coef if neg else coef)
    return terms


def _to_poly(coeffs: dict[int, Fraction]) -> fmpq_poly:
    if not coeffs:
        return fmpq_poly([])
    top = max(coeffs)
    return fmpq_poly([as_fmpq(coeffs.get(e, 0)) for e in range(top + 1)])


def parse_canonical(text: str, tower):
    """Parse the output of :func:`element_to_text` without building an AST.

    Canonical expressions of large elements have many thousands of terms,
    which the generic parser cannot handle.
    """
    text = text.strip()
    den = fmpq_poly([1])
    if text.startswith("(") and ")/(" in text and text.endswith(")"):
        num_text, den_text = text[1:-1].split(")/(", 1)
        dterms = _parse_poly_text(den_text, tower.base, ())
        den = _to_poly(dterms.get(0, {}))
    else:
        num_text = text
    terms = _parse_poly_text(num_text, tower.base, tower.names)
    out = {mask: RatFunc(_to_poly(c), den) for mask, c in terms.items()}
    return tower.from_terms({m: r for m, r in out.items() if not r.is_zero()})


def parse_tower(lines: list[str], base: str = "s"):
    """Rebuild a tower from ``name^2 = expr`` lines."""
    from .tower import Tower
    tower = Tower(base)
    for line in lines:
        lhs, rhs = line.split("=", 1)
        name = lhs.strip()
        if not name.endswith("^2"):
            raise ParseError(f"bad tower relation {line!r}")
        name = name[:-2].strip()
        rad = parse_expr(rhs, tower)
        tower = tower.extend(rad, name, check=False)
    return tower


def rational_to_text(c) -> str:
    if isinstance(c, fmpq):
        c = fmpq_to_fraction(c)
    return _rat_text(Fraction(c))


__all__ = ["ParseError", "element_to_text", "tower_to_text", "parse_expr",
           "parse_tower", "parse_canonical", "parse_rational", "poly_to_text", "rational_to_text",
           "RatFunc", "as_fmpq"]
