"""Pipelines of transformation steps and their inline text syntax.

Inline syntax: comma-separated tags with optional bracketed parameters, e.g.
``okamoto[-1/3,-1/3,-4/5,4/5],kitaevB`` or ``fl[p2],kitaevB[1,-1]``.
Rationals are exact ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from ..algebra.textform import ParseError, parse_rational
from ..pvi import ParamSolution, ThetaTuple
from .conjugate import conjugate_to_shape, relabel
from .contiguous import Y4Chain, contiguous_Y0, inverse_quadratic
from .errors import TransformError
from .fractional import FL_ROWS, fl_apply
from .okamoto import NuTuple, okamoto
from .quadratic import (HALF, FoldContext, fold_context, fold_Y0, fold_Y0_tilde, kitaev_B,
                        manin_quadratic, table_quadratic)
from .shifts import SHIFT_KINDS, param_shift, state_from_context

# tag -> (number of parameters allowed, precondition, postcondition)
STEP_RULES = {
    "okamoto": ((4,), "nu is a sign choice of theta", "theta -> nu - (sum nu)/2"),
    "fl": ((1,), "none", "theta permuted by the row"),
    "relabel": ((4,), "new theta equivalent to theta", "theta replaced"),
    "conj": ((1, 2), "some row reaches the shape", "theta in the requested shape"),
    "manin": ((0,), "(0,A,B,1)", "(A/2,B/2,B/2,A/2+1)"),
    "quadratic": ((2, 3), "top row shape", "bottom row shape"),
    "kitaevA": ((0, 2), "(a,b-1,b,a+1)", "(a,1/2,1/2,b)"),
    "kitaevA_b1": ((0, 2), "(a,b-1,b,a+1)", "(a,1/2,1/2,b+1)"),
    "kitaevA_half": ((0, 2), "(a,b-1,b,a+1)", "(1/2,a,b,1/2)"),
    "kitaevB": ((0, 2), "(a,a,b,b)", "(1/2,1/2,a,b)"),
    "contiguousY0": ((0,), "(a,b-1,b,a+1)", "(a,1/2,1/2,b)"),
    "y4": ((0,), "(a,b-1,b,a+1)", "(1/2,a,b,-1/2)"),
    "shift": ((1,), "(a,b-1,b,a+1)", "(a',1/2,1/2,b') for the shifted a, b"),
    "inverse": ((0,), "(a,b-1,b,a+1)", "the input, recovered from Y1 and Y2"),
}
_ALIASES = {"kitaeva": "kitaevA", "kitaevb": "kitaevB", "kitaeva_b1": "kitaevA_b1",
            "kitaeva_half": "kitaevA_half", "contiguousy0": "contiguousY0"}
_STEP_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\[([^\]]*)\])?\s*")


@dataclass(frozen=True)
class TransformStep:
    kind: str
    params: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in STEP_RULES:
            raise ParseError(f"unknown step {self.kind!r}; known: {', '.join(STEP_RULES)}")
        counts = STEP_RULES[self.kind][0]
        if len(self.params) not in counts:
            raise ParseError(f"step {self.kind} takes {' or '.join(map(str, counts))} parameters, "
                             f"got {len(self.params)}")

    @property
    def precondition(self) -> str:
        return STEP_RULES[self.kind][1]

    @property
    def postcondition(self) -> str:
        return STEP_RULES[self.kind][2]

    def __str__(self):
        if not self.params:
            return self.kind
        return f"{self.kind}[{','.join(str(p) for p in self.params)}]"


def _param(kind: str, text: str):
    text = text.strip()
    if kind in ("fl", "shift"):
        return text
    if kind == "conj":
        return int(text) if text.isdigit() else text
    if kind in ("quadratic", "kitaevA", "kitaevA_b1", "kitaevA_half", "kitaevB"):
        try:
            return int(text)
        except ValueError:
            raise ParseError(f"integer expected in {kind}[...], got {text!r}") from None
    return parse_rational(text)


def parse_pipeline(text: str) -> list[TransformStep]:
    """Parse the inline syntax (newlines also separate steps; ``#`` starts a comment)."""
    cleaned = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            cleaned.append(line)
    body = ",".join(cleaned)
    steps = []
    pos = 0
    while pos < len(body):
        m = _STEP_RE.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse pipeline near {body[pos:pos + 20]!r}")
        tag = _ALIASES.get(m.group(1).lower(), m.group(1))
        raw = m.group(2)
        params = tuple(_param(tag, p) for p in raw.split(",")) if raw not in (None, "") else ()
        steps.append(TransformStep(tag, params))
        pos = m.end()
        if pos < len(body):
            if body[pos] != ",":
                raise ParseError(f"expected ',' at {body[pos:pos + 20]!r}")
            pos += 1
    if not steps:
        raise ParseError("empty pipeline")
    return steps


def load_pipeline(spec: str) -> list[TransformStep]:
    """``spec`` is a path to a pipeline file or an inline pipeline."""
    path = Path(spec)
    if path.suffix in (".txt", ".pipeline") or (len(spec) < 4096 and path.is_file()):
        try:
            return parse_pipeline(path.read_text())
        except OSError as exc:
            raise ParseError(f"cannot read pipeline file {spec!r}: {exc}") from exc
    return parse_pipeline(spec)


def _signs(step: TransformStep) -> dict:
    if len(step.params) != 2 or step.kind in ("quadratic", "conj"):
        return {}
    s1, s2 = step.params
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise TransformError("branch signs must be 1 or -1", str(step))
    if step.kind == "kitaevB":
        return {"rt_sign": s1, "rg_sign": s2}
    return {"tau_sign": s1, "eta_sign": s2}


def _fold_label(ctx: FoldContext, tag: str) -> str:
    return f"{tag}({ctx.label})" if ctx.label else tag


def apply_step(sol: ParamSolution, step: TransformStep) -> ParamSolution:
    k = step.kind
    if k == "okamoto":
        return okamoto(sol, NuTuple.of(step.params))
    if k == "fl":
        if step.params[0] not in FL_ROWS:
            raise TransformError(f"unknown row {step.params[0]!r}", str(step))
        return fl_apply(sol, step.params[0])
    if k == "relabel":
        return relabel(sol, ThetaTuple.of(step.params))
    if k == "conj":
        shape = step.params[0]
        which = step.params[1] if len(step.params) > 1 else 0
        return conjugate_to_shape(sol, shape, which)[0]
    if k == "manin":
        return manin_quadratic(sol)
    if k == "quadratic":
        top, bottom = step.params[:2]
        swap = bool(step.params[2]) if len(step.params) > 2 else False
        return table_quadratic(sol, top, bottom, swap_ab=swap)
    if k == "kitaevB":
        return kitaev_B(sol, **_signs(step))
    # every remaining step works on the (a,b-1,b,a+1) fold
    step_name = str(step)
    ctx = fold_context(sol, step=step_name, **_signs(step))
    a, b = ctx.a, ctx.b
    if k == "kitaevA":
        return ctx.solution(fold_Y0(ctx), ThetaTuple(a, HALF, HALF, b), "kitaevA")
    if k == "kitaevA_b1":
        return ctx.solution(fold_Y0_tilde(ctx), ThetaTuple(a, HALF, HALF, b + 1), "kitaevA_b1")
    if k == "kitaevA_half":
        out = fl_apply(ctx.solution(fold_Y0_tilde(ctx), ThetaTuple(a, HALF, HALF, b + 1), "kitaevA_b1"), "p2")
        out.label = _fold_label(ctx, "kitaevA_half")
        return out
    if k == "contiguousY0":
        Y1 = ctx.solution(ctx.Y1(), ctx.theta_Y1(), "Y1")
        Y2 = ctx.solution(ctx.Y2(), ctx.theta_Y2(), "Y2")
        out = contiguous_Y0(Y1, Y2, a, b)
        out.label = _fold_label(ctx, "contiguousY0")
        return out
    if k == "y4":
        return Y4Chain(ctx).solutions()["Y4"]
    if k == "shift":
        kind = step.params[0]
        if kind not in SHIFT_KINDS:
            raise TransformError(f"unknown shift {kind!r}; expected one of {', '.join(SHIFT_KINDS)}", step_name)
        st = param_shift(state_from_context(ctx), kind)
        shifted = FoldContext(st.a, st.b, ctx.t1, st.y0, st.eta * st.eta, st.tau, st.eta, ctx.label)
        return shifted.solution(fold_Y0(shifted), ThetaTuple(st.a, HALF, HALF, st.b), f"shift[{kind}]")
    if k == "inverse":
        Y1 = ctx.solution(ctx.Y1(), ctx.theta_Y1(), "Y1")
        Y2 = ctx.solution(ctx.Y2(), ctx.theta_Y2(), "Y2")
        y0 = inverse_quadratic(Y1, Y2, ctx.sqrt_T1)
        return ParamSolution(ctx.t1, y0, sol.theta, _fold_label(ctx, "inverse"))
    raise TransformError(f"step {k} is not implemented", step_name)


def apply_pipeline(sol: ParamSolution, steps) -> ParamSolution:
    """Apply steps in order; failures name the step and its position."""
    if isinstance(steps, str):
        steps = parse_pipeline(steps)
    for i, step in enumerate(steps, 1):
        try:
            sol = apply_step(sol, step)
        except TransformError as exc:
            where = f"step {i} ({step})"
            msg = str(exc)
            raise type(exc)(msg, where) from exc
    return sol


__all__ = ["TransformStep", "parse_pipeline", "load_pipeline", "apply_step", "apply_pipeline",
           "STEP_RULES", "Fraction"]
