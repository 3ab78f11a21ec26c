# core/estimator.py
"""
Prawa strona głównego oszacowania: minimum po m, ᾱ ∈ 𝒩_m, Z ∈ 𝒵_m
wyrażenia ν_{α_1}^{λ_1}…ν_{α_m}^{λ_m}·Φ(θ̄(ᾱ, Z), q̄, k̄, n).
Zwracamy wartość oraz certyfikat (zwycięski kandydat).
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

from .conf import widths_setting
from .geometry import CandidateZ, Rejection, WeightSolution, ZKind, enumerate_Z, solve_weights
from .phi import phi
from .problem import (
    LogValue,
    ProblemSpec,
    ProblemValidationError,
    RangeError,
    ReciprocalVector,
    WidthsError,
    with_n,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Certificate:
    m: int
    ball_indices: Tuple[int, ...]
    Z: CandidateZ
    weights: WeightSolution
    log_value: LogValue

    def sort_key(self) -> tuple:
        # remisy rozstrzygane leksykograficznie: (wartość, m, indeksy kul, Z)
        return (self.log_value.log_value, self.m, self.ball_indices, self.Z.sort_key())


@dataclass(frozen=True)
class RejectedCandidate:
    ball_indices: Tuple[int, ...]
    Z: CandidateZ
    rejection: Rejection


@dataclass(frozen=True)
class EstimateResult:
    log_value: LogValue
    winner: Certificate
    runners_up: Tuple[Certificate, ...] = ()
    candidate_count: int = 0
    rejections: Tuple[RejectedCandidate, ...] = field(default=(), compare=False)

    @property
    def unique_minimum(self) -> bool:
        return not self.runners_up


# --------------------------------------------------------------------------------------
# POJEDYNCZY KANDYDAT
# --------------------------------------------------------------------------------------
def candidate_value(
    problem: ProblemSpec,
    ball_indices: Sequence[int],
    Z: CandidateZ,
    tol: Optional[float] = None,
) -> Union[Certificate, Rejection]:
    indices = tuple(ball_indices)
    if len(set(indices)) != len(indices):
        raise RangeError(f"Indeksy kul muszą być różne: {list(indices)}.")
    balls = [problem.balls[i] for i in indices]
    sol = solve_weights([b.p for b in balls], Z, problem.q, tol=tol)
    if isinstance(sol, Rejection):
        return sol
    log_phi = phi(sol.theta_hat, problem.q, problem.k, problem.n).log_value
    total = sum(lam * b.log_nu for lam, b in zip(sol.lambdas, balls)) + log_phi
    return Certificate(
        m=Z.m,
        ball_indices=indices,
        Z=Z,
        weights=sol,
        log_value=LogValue(total),
    )


def upper_bound_value(
    problem: ProblemSpec,
    ball_indices: Sequence[int],
    lambdas: Sequence[float],
    tol: Optional[float] = None,
) -> LogValue:
    """
    ∏ ν^{λ_j} · Φ(θ̄(λ)), gdzie 1/θ̄ = Σ λ_j/p̄_j – górne oszacowanie
    (z dokładnością do stałej) dla dowolnego punktu simpleksu.
    """
    if tol is None:
        tol = widths_setting("TOLERANCE")
    indices = tuple(ball_indices)
    if len(indices) != len(lambdas) or not indices:
        raise RangeError("Liczba wag λ musi równać się liczbie kul (i być dodatnia).")
    if len(set(indices)) != len(indices):
        raise RangeError(f"Indeksy kul muszą być różne: {list(indices)}.")
    lam = [float(v) for v in lambdas]
    if any(math.isnan(v) or v < 0 for v in lam) or abs(math.fsum(lam) - 1.0) > tol:
        raise RangeError(f"Wagi λ = {lam} nie leżą w simpleksie.")

    d = problem.d
    balls = [problem.balls[i] for i in indices]
    x = [min(1.0, max(0.0, sum(l * b.p[i] for l, b in zip(lam, balls)))) for i in range(d)]
    log_phi = phi(ReciprocalVector(tuple(x)), problem.q, problem.k, problem.n).log_value
    return LogValue(sum(l * b.log_nu for l, b in zip(lam, balls) if l > 0) + log_phi)


# --------------------------------------------------------------------------------------
# OSZACOWANIE
# --------------------------------------------------------------------------------------
def _candidates(problem: ProblemSpec, tol: float) -> List[Tuple[Tuple[int, ...], CandidateZ]]:
    size = len(problem.balls)
    out: List[Tuple[Tuple[int, ...], CandidateZ]] = []
    for m in range(1, min(size, problem.d + 1) + 1):
        planes = enumerate_Z(m, problem.q, tol=tol)
        for idx in combinations(range(size), m):
            out.extend((idx, z) for z in planes)
    return out


def estimate(
    problem: ProblemSpec,
    tol: Optional[float] = None,
    workers: Optional[int] = None,
    slack: Optional[float] = None,
) -> EstimateResult:
    """
    Przegląda wszystkie pary (ᾱ, Z) dla m = 1..min(#A, d+1) i zwraca minimum.
    Redukcja jest deterministyczna niezależnie od liczby wątków.
    """
    if tol is None:
        tol = widths_setting("TOLERANCE")
    if workers is None:
        workers = int(widths_setting("WORKERS"))
    if slack is None:
        slack = widths_setting("RUNNER_UP_SLACK")

    pairs = _candidates(problem, tol)

    def evaluate(pair):
        idx, z = pair
        return idx, z, candidate_value(problem, idx, z, tol=tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(evaluate, pairs))
    else:
        outcomes = [evaluate(p) for p in pairs]

    accepted: List[Certificate] = []
    rejected: List[RejectedCandidate] = []
    for idx, z, res in outcomes:
        if isinstance(res, Rejection):
            rejected.append(RejectedCandidate(idx, z, res))
            logger.debug("Odrzucono %s × %s: %s", list(idx), z.label, res)
        else:
            accepted.append(res)

    if not accepted:
        # m = 1 zawsze daje #A kandydatów
        raise WidthsError("Brak dopuszczalnych kandydatów.")

    accepted.sort(key=Certificate.sort_key)
    winner = accepted[0]
    runners_up = tuple(
        c for c in accepted[1:] if c.log_value.log_value <= winner.log_value.log_value + slack
    )
    logger.info(
        "Oszacowanie: log Ψ = %.12g, m = %d, kule %s, Z = %s (%d kandydatów, %d odrzuconych)",
        winner.log_value.log_value,
        winner.m,
        list(winner.ball_indices),
        winner.Z.label,
        len(pairs),
        len(rejected),
    )
    return EstimateResult(
        log_value=winner.log_value,
        winner=winner,
        runners_up=runners_up,
        candidate_count=len(pairs),
        rejections=tuple(rejected),
    )


@dataclass(frozen=True)
class SweepRow:
    n: int
    result: Optional[EstimateResult] = None
    error: Optional[str] = None


def sweep_n(
    problem: ProblemSpec,
    n_values: Sequence[int],
    tol: Optional[float] = None,
    workers: Optional[int] = None,
) -> List[SweepRow]:
    """Niezależne oszacowania dla kolejnych n; błędy walidacji zbierane per wiersz."""
    rows: List[SweepRow] = []
    for n in n_values:
        try:
            sub = with_n(problem, n)
        except ProblemValidationError as exc:
            logger.warning("Pominięto n = %s: %s", n, "; ".join(exc.messages))
            rows.append(SweepRow(n=n, error="; ".join(exc.messages)))
            continue
        rows.append(SweepRow(n=n, result=estimate(sub, tol=tol, workers=workers)))
    return rows


def is_m1_winner(result: EstimateResult) -> bool:
    return result.winner.m == 1 and result.winner.Z.kind == ZKind.Q_FACE and not result.winner.Z.indices
