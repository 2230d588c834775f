"""Residual checks for catalog entries and for the solutions derived from type 39."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from ..algebra.numeric import DEFAULT_DPS
from ..pvi import ParamSolution, ThetaTuple, VerificationReport, verify
from ..transforms.contiguous import Y4Chain, contiguous_Y0
from ..transforms.okamoto import NuTuple, okamoto
from ..transforms.pipeline import apply_pipeline
from ..transforms.quadratic import HALF, fold_context, fold_Y0, fold_Y0_tilde, kitaev_A_half, kitaev_B
from .entries import CatalogEntry, catalog_ids, load_entry

# boalch-39 moved by the fractional-linear row s1s2s1 to theta=(1/3,-1/5,4/5,4/3),
# i.e. the (a,b-1,b,a+1) shape with a = 1/3, b = 4/5
CHAIN_BASE = "boalch-39"
CHAIN_CONJ = "conj[kitaevA,2]"
TILDE_NU = NuTuple.of("-1/3", "-1/3", "-4/5", "4/5")


def verify_entry(entry: CatalogEntry | ParamSolution, mode: str = "auto", samples: int = 20,
                 dps: int = DEFAULT_DPS) -> VerificationReport:
    sol = entry.solution if isinstance(entry, CatalogEntry) else entry
    if isinstance(entry, CatalogEntry):
        sol = ParamSolution(sol.t, sol.y, entry.theta, entry.id)
    return verify(sol, mode=mode, samples=samples, dps=dps)


def _verify_id(args) -> VerificationReport:
    entry_id, mode, samples, dps = args
    return verify_entry(load_entry(entry_id), mode, samples, dps)


def verify_catalog(ids=None, mode: str = "auto", samples: int = 20, dps: int = DEFAULT_DPS,
                   jobs: int = 1) -> list[VerificationReport]:
    """Reports in the order of ``ids`` (default: every catalog id)."""
    ids = list(ids) if ids is not None else catalog_ids()
    work = [(eid, mode, samples, dps) for eid in ids]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_verify_id, work))
    return [_verify_id(w) for w in work]


def chain_context():
    """Fold data of the type-39 chain (a = 1/3, b = 4/5)."""
    base = apply_pipeline(load_entry(CHAIN_BASE).solution, CHAIN_CONJ)
    return base, fold_context(base, step="type39_chain")


def type39_chain() -> dict[str, ParamSolution]:
    """Solutions obtained from the type-39 entry by Okamoto, fold and contiguous maps."""
    src = load_entry(CHAIN_BASE).solution
    base, ctx = chain_context()
    chain = Y4Chain(ctx)
    sols = chain.solutions()
    out = {
        "y39~": okamoto(src, TILDE_NU),
        "y0": base,
        "Y0": ctx.solution(fold_Y0(ctx), ThetaTuple(ctx.a, HALF, HALF, ctx.b), "Y0"),
        "Y0~": ctx.solution(fold_Y0_tilde(ctx), ThetaTuple(ctx.a, HALF, HALF, ctx.b + 1), "Y0~"),
        "Y0_half": kitaev_A_half(base),
        "Y0_contiguous": contiguous_Y0(sols["Y1"], sols["Y2"], ctx.a, ctx.b),
        "G0": kitaev_B(src),
    }
    out.update(sols)
    out["Y4_compact"] = chain.compact_companion()
    for name, sol in out.items():
        sol.label = f"chain:{name}"
    return out


def degree_check(entry_id: str, dps: int = 40) -> tuple[int, int | None]:
    """(degree of t from its branching, claimed degree)."""
    from .branching import branching

    entry = load_entry(entry_id)
    pattern = branching(entry.solution.t, entry_id, dps=dps, orbits=False)
    if not pattern.sums_ok():
        raise ValueError(f"{entry_id}: fiber sums disagree: {pattern.to_text()}")
    return pattern.degree, entry.degree


__all__ = ["verify_entry", "verify_catalog", "type39_chain", "chain_context", "degree_check",
           "CHAIN_BASE", "CHAIN_CONJ", "TILDE_NU"]
