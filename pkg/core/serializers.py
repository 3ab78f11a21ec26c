# core/serializers.py
"""
Pliki problemu (JSON) i słownikowe postacie wyników.

Format pliku:
    {"k": [16], "q": [4], "n": 4,
     "balls": [{"nu": 1, "p": [1]}, {"nu": 0.25, "p": ["inf"]}]}
Zamiast "p" kula może mieć "x" – współrzędne odwrotne 1/p (zapis dokładny).
"""
from __future__ import annotations

import json
import math
from typing import Any, Dict, List, Optional, Sequence

from .estimator import Certificate, EstimateResult, SweepRow
from .forms import ProblemForm
from .problem import INF_TOKEN, ProblemSpec


# --------------------------------------------------------------------------------------
# PROBLEM ↔ JSON
# --------------------------------------------------------------------------------------
def p_to_json(x: float):
    if x == 0:
        return INF_TOKEN
    p = 1.0 / x
    return int(p) if p.is_integer() else p


def problem_to_dict(problem: ProblemSpec, reciprocal: bool = False) -> Dict[str, Any]:
    balls = []
    for b in problem.balls:
        entry: Dict[str, Any] = {"nu": b.nu}
        if reciprocal:
            entry["x"] = list(b.p)
        else:
            entry["p"] = [p_to_json(xi) for xi in b.p]
        balls.append(entry)
    return {
        "k": list(problem.k),
        "q": [int(qi) if float(qi).is_integer() else qi for qi in problem.q],
        "n": problem.n,
        "balls": balls,
    }


def dump_problem(problem: ProblemSpec, reciprocal: bool = False) -> str:
    """Deterministyczny zapis (posortowane klucze, stałe wcięcia, LF na końcu)."""
    return json.dumps(problem_to_dict(problem, reciprocal=reciprocal), sort_keys=True, indent=2) + "\n"


def load_problem(text: str, n: Optional[int] = None) -> ProblemSpec:
    """
    JSON → zwalidowany ProblemSpec. Błąd składni JSON to ValueError
    (json.JSONDecodeError); błędy treści – ProblemValidationError.
    """
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("Plik problemu musi zawierać obiekt JSON.")
    if n is not None:
        data = dict(data, n=n)
    return ProblemForm.from_document(data).problem()


# --------------------------------------------------------------------------------------
# WYNIKI → dict
# --------------------------------------------------------------------------------------
def _num(v: float):
    return None if v is None else (INF_TOKEN if math.isinf(v) else v)


def certificate_to_dict(cert: Certificate) -> Dict[str, Any]:
    return {
        "m": cert.m,
        "ball_indices": [i + 1 for i in cert.ball_indices],
        "Z_kind": str(cert.Z.kind),
        "I": [i + 1 for i in cert.Z.indices],
        "Z": cert.Z.label,
        "lambda": list(cert.weights.lambdas),
        "theta": [_num(v) for v in cert.weights.theta],
        "theta_hat": list(cert.weights.theta_hat),
        "omega_common": cert.weights.omega_common,
        "log_value": cert.log_value.log_value,
        "value": cert.log_value.value,
    }


def result_to_dict(result: EstimateResult, diagnostics: bool = False) -> Dict[str, Any]:
    out = {
        "log_value": result.log_value.log_value,
        "value": result.log_value.value,
        "winner": certificate_to_dict(result.winner),
        "runners_up": [certificate_to_dict(c) for c in result.runners_up],
        "unique_minimum": result.unique_minimum,
        "candidate_count": result.candidate_count,
    }
    if diagnostics:
        out["rejections"] = [
            {"ball_indices": [i + 1 for i in r.ball_indices], "Z": r.Z.label, "reason": str(r.rejection)}
            for r in result.rejections
        ]
    return out


def fmt(v: float) -> str:
    """12 cyfr znaczących, kropka dziesiętna niezależnie od locale."""
    if v is None:
        return ""
    if math.isinf(v):
        return INF_TOKEN if v > 0 else "-" + INF_TOKEN
    return f"{v:.12g}"


def fmt_list(values: Sequence[float]) -> str:
    return " ".join(fmt(v) for v in values)


SWEEP_HEADER = ["n", "log_value", "value", "m", "Z_kind", "I", "lambda", "theta"]


def sweep_row_cells(row: SweepRow) -> List[str]:
    if row.result is None:
        return [str(row.n), "", "", "", "", "", "", ""]
    w = row.result.winner
    return [
        str(row.n),
        fmt(w.log_value.log_value),
        fmt(w.log_value.value),
        str(w.m),
        str(w.Z.kind),
        " ".join(str(i + 1) for i in w.Z.indices),
        fmt_list(w.weights.lambdas),
        fmt_list(w.weights.theta),
    ]
