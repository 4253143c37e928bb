"""Exact JSON/CSV serialization of results.

Rationals are written as ``"p/q"`` strings (``"3"`` for integers stored as
fractions) and infinity as ``"inf"``, so nothing is ever rounded.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Any

from . import __version__
from .cycles import AlmostIsometryReport, ShortcutProfile
from .constants import ConstantsReport, InequalitySweep
from .milnor_schwarz import FineMSReport
from .ngon import NGonEmbedding, SampledNGon, StitchedCycle
from .tightening import TighteningTrace, VerificationReport


def exact(x: Any) -> Any:
    """Recursively convert to JSON-safe values without losing exactness."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        raise TypeError(f"refusing to serialize float {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    return str(x)


def envelope(command: str, config: dict, result: dict, status: str) -> dict:
    return {
        "tool": "shortcut-lab",
        "version": __version__,
        "command": command,
        "config": exact(config),
        "status": status,
        "result": exact(result),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def circle_result(rep: AlmostIsometryReport, labels=None) -> dict:
    out = {
        "n": rep.length,
        "points": rep.points,
        "k_value": rep.k_value,
        "worst_pair": list(rep.worst_pair),
        "min_distance": rep.min_distance,
        "midpoint_slack": rep.midpoint_slack,
        "circle": list(rep.circle.vertices),
    }
    if labels is not None:
        out["circle_labels"] = [labels[v] for v in rep.circle.vertices]
    return out


def search_result(graph_name: str, K, cap: int, mode: str, rep: AlmostIsometryReport | None) -> dict:
    return {
        "graph": graph_name,
        "K": K,
        "cap": cap,
        "mode": mode,
        "best_length": rep.length if rep else 0,
        "k_value": rep.k_value if rep else None,
        "witness_cycle": list(rep.circle.vertices) if rep else None,
        "certified_exact": rep.certified_exact if rep else mode == "exact",
    }


def profile_result(profile: ShortcutProfile, mode: str) -> dict:
    return {
        "graph": profile.graph_id,
        "mode": mode,
        "rows": [
            {
                "K": r.K,
                "cap": r.length_cap,
                "best_length": r.best_length_found,
                "certified_exact": r.certified_exact,
                "k_value": r.k_value,
                "witness_cycle": list(r.witness) or None,
            }
            for r in profile.rows
        ],
    }


def embedding_result(emb: NGonEmbedding | None) -> dict | None:
    if emb is None:
        return None
    return {"n": emb.n, "lambda": emb.lam, "vertices": list(emb.vertices), "k_achieved": emb.k_achieved}


def stitched_result(st: StitchedCycle) -> dict:
    return {
        "cycle": list(st.circle.vertices),
        "length": len(st.circle),
        "segment_lengths": list(st.segment_lengths),
        "fallbacks": [list(f) for f in st.fallbacks],
        "predicted_inverse_K": st.predicted_inverse_K,
        "measured_k_value": st.report.k_value,
        "guarantee_applies": st.guarantee_applies,
        "guarantee_holds": st.guarantee_holds,
    }


def sampled_result(sn: SampledNGon) -> dict:
    return {
        **embedding_result(sn.embedding),
        "positions": list(sn.positions),
        "predicted_K": sn.predicted_K,
        "rounded_bound": sn.rounded_bound,
        "within_bound": sn.within_bound,
    }


def trace_result(trace: TighteningTrace, verification: VerificationReport) -> dict:
    walk = trace.as_graph_walk()
    return {
        "initial_length": trace.initial_length,
        "final_length": trace.final_length,
        "steps": [
            {
                "i": st.i,
                "p_i": st.p,
                "q_i": st.q,
                "arc": st.arc,
                "len_Q": st.len_Q,
                "len_Qbar": st.len_Qbar,
                "image_distance": st.image_distance,
                "circle_len_after": st.circle_len_after,
                "disjoint": st.disjoint,
            }
            for st in trace.steps
        ],
        "final_points": [trace.labels[x] for x in trace.final_entries],
        "final_walk": list(walk.vertices) if walk else None,
        "preimage": list(trace.preimage),
        "completely_disjoint": trace.completely_disjoint,
        "termination": trace.termination,
        "verification": verification_result(verification),
    }


def verification_result(v: VerificationReport) -> dict:
    return {
        "K_input": v.K_input,
        "K_measured": v.K_measured,
        "N": v.N,
        "M": v.M,
        "K_greedy": v.K_greedy,
        "K_disjoint": v.K_disjoint,
        "ok": v.ok,
        "checks": [
            {"name": c.name, "status": c.status, "detail": c.detail, "witness": list(c.witness)}
            for c in v.checks
        ],
    }


def constants_result(c: ConstantsReport, sweep: InequalitySweep | None) -> dict:
    out = {
        "N": c.N,
        "L": c.L,
        "R": c.R,
        "K": c.K,
        "K_greedy": c.K_greedy,
        "K_disjoint": c.K_disjoint,
        "K_max": c.K_max,
        "M": c.M,
        "M_note": "a sufficient threshold",
        "M_terms": dict(c.thresholds),
    }
    if sweep is not None:
        out["sweep"] = {
            "seed": sweep.seed,
            "samples": sweep.samples,
            "failures": [[L, N, list(r)] for L, N, r in sweep.failures],
            "ok": sweep.ok,
        }
    return out


def fine_ms_result(reports: list[FineMSReport]) -> dict:
    return {
        "rows": [
            {
                "action": r.action,
                "t": r.t,
                "R": r.R,
                "sample_radius": r.sample_radius,
                "K_certified": r.K_certified,
                "K_empirical": r.K_empirical,
                "additive_constant_observed": r.additive_constant_observed,
                "pairs_checked": r.pairs_checked,
                "generating_ball_size": r.ball_size,
                "lower_violations": [list(v) for v in r.lower_violations],
                "upper_violations": [list(v) for v in r.upper_violations],
                "ok": r.ok,
            }
            for r in reports
        ]
    }


def to_csv(report: dict) -> str:
    """One row per table entry (profile rows, sweep rows, tightening steps), else one summary row."""
    res = report["result"]
    rows = res.get("rows") or res.get("steps") or [
        {k: v for k, v in res.items() if not isinstance(v, (dict, list))}
    ]
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["command", *cols], lineterminator="\n")
    writer.writeheader()
    for r in rows:
        flat = {k: (json.dumps(v) if isinstance(v, (dict, list, bool)) or v is None else v) for k, v in r.items()}
        writer.writerow({"command": report["command"], **flat})
    return buf.getvalue()
