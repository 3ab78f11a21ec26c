# core/oracle.py
"""
Niezależne wyrocznie:
- minimum funkcji ψ(λ) = Σ λ_j log ν_j + log Φ(Σ λ_j/p̄_j) na siatce simpleksu,
- losowa kontrola zgodności Φ z jej postacią kawałkami.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from .conf import widths_setting
from .phi import build_context, phi, phi_batch, phi_piecewise
from .problem import CapacityError, LogValue, ProblemSpec, RangeError, ReciprocalVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridSpec:
    r: int
    max_points: int = 2_000_000

    def __post_init__(self):
        if int(self.r) < 2:
            raise RangeError(f"Rozdzielczość siatki r = {self.r} musi być ≥ 2.")

    @property
    def step(self) -> Fraction:
        return Fraction(1, int(self.r))

    def point_count(self, size: int) -> int:
        return math.comb(int(self.r) + size - 1, size - 1)


@dataclass(frozen=True)
class GridResult:
    log_value: LogValue
    weights: Tuple[float, ...]
    error_bound: float
    points: int


def _compositions(parts: int, total: int) -> np.ndarray:
    """Wszystkie krotki nieujemnych liczb całkowitych o długości `parts` i sumie `total`."""
    if parts == 1:
        return np.array([[total]], dtype=np.int64)
    blocks = []
    for first in range(total + 1):
        rest = _compositions(parts - 1, total - first)
        blocks.append(np.hstack([np.full((rest.shape[0], 1), first, dtype=np.int64), rest]))
    return np.vstack(blocks)


def lipschitz_bound(problem: ProblemSpec) -> float:
    """
    Stała Lipschitza ψ względem λ (norma ℓ1), pomnożona przez #A –
    tyle wynosi maksymalna odległość ℓ1 do najbliższego punktu siatki, w krokach.
    """
    log_nu = max(abs(b.log_nu) for b in problem.balls)
    lk = [math.log(max(ki, 2)) for ki in problem.k]
    slope = max([2.0] + [1.0 / (0.5 - 1.0 / qi) for qi in problem.q if qi > 2.0])
    g = sum(lk) + slope * (0.5 * math.log(problem.n) + 0.5 * sum(lk))
    return len(problem.balls) * (log_nu + g)


def grid_min(problem: ProblemSpec, grid: GridSpec) -> GridResult:
    size = len(problem.balls)
    count = grid.point_count(size)
    if count > grid.max_points:
        raise CapacityError(f"Siatka ma {count} punktów, limit {grid.max_points}.")

    weights = _compositions(size, int(grid.r)).astype(float) / float(grid.r)
    P = np.asarray([list(b.p) for b in problem.balls], dtype=float)
    log_nu = np.asarray([b.log_nu for b in problem.balls], dtype=float)
    X = np.clip(weights @ P, 0.0, 1.0)
    values = weights @ log_nu + phi_batch(X, problem.q, problem.k, problem.n)

    best = int(np.argmin(values))
    bound = lipschitz_bound(problem) * float(grid.step)
    logger.info("Siatka r = %d: %d punktów, min log ψ = %.12g", grid.r, count, values[best])
    return GridResult(
        log_value=LogValue(float(values[best])),
        weights=tuple(float(v) for v in weights[best]),
        error_bound=bound,
        points=count,
    )


# --------------------------------------------------------------------------------------
# KONTROLA Φ – losowe instancje
# --------------------------------------------------------------------------------------
@dataclass
class PhiCheckReport:
    samples: int = 0
    max_abs_diff: float = 0.0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _random_instance(rng: np.random.Generator, d: int) -> Tuple[List[int], List[float], List[float], int]:
    while True:
        k = [int(2 ** rng.uniform(0, 12)) for _ in range(d)]
        if math.prod(k) >= 2:
            break
    q = []
    for _ in range(d):
        q.append(float(rng.choice([2.0, 3.0, 4.0, 8.0])) if rng.random() < 0.5 else float(rng.uniform(2.0, 20.0)))
    x = []
    for qi in q:
        roll = rng.random()
        if roll < 0.4:
            x.append(float(rng.choice([1.0, 0.5, 1.0 / qi, 0.0])))
        else:
            x.append(float(rng.uniform(0.0, 1.0)))
    max_n = math.prod(k) // 2
    if rng.random() < 0.25:
        # n dokładnie w punkcie załamania
        ctx = build_context(ReciprocalVector(tuple(x)), q)
        s = ctx.sigma
        t = int(rng.integers(0, d + 1))
        log_bp = sum(math.log(k[s[i]]) for i in range(t)) + sum(
            2.0 / q[s[i]] * math.log(k[s[i]]) for i in range(t, d)
        )
        n = int(round(math.exp(log_bp)))
    else:
        n = int(round(math.exp(rng.uniform(0.0, math.log(max_n))))) if max_n > 1 else 1
    return k, q, x, min(max(n, 1), max_n)


def exhaustive_phi_check(
    sample_count: int,
    dims: Union[int, Iterable[int]] = 4,
    seed: int = 0,
    tol: float = 1e-9,
) -> PhiCheckReport:
    """Porównuje log phi z log phi_piecewise na losowych instancjach (deterministycznie dla ziarna)."""
    dim_choices = list(range(1, dims + 1)) if isinstance(dims, int) else [int(v) for v in dims]
    rng = np.random.default_rng(seed)
    report = PhiCheckReport()
    for _ in range(int(sample_count)):
        d = int(rng.choice(dim_choices))
        k, q, x, n = _random_instance(rng, d)
        p = ReciprocalVector(tuple(x))
        a = phi(p, q, k, n).log_value
        b = phi_piecewise(p, q, k, n).log_value
        diff = abs(a - b)
        report.samples += 1
        report.max_abs_diff = max(report.max_abs_diff, diff)
        if diff > tol:
            report.failures.append({"k": k, "q": q, "x": x, "n": n, "phi": a, "phi_piecewise": b, "diff": diff})
    if report.failures:
        logger.warning("Kontrola Φ: %d niezgodności na %d próbach.", len(report.failures), report.samples)
    return report


def equivalence_holds(estimate_log: float, grid: GridResult, tol: float = 1e-9) -> bool:
    """
    Oszacowanie jest wartością ψ w punkcie simpleksu, więc nie może leżeć poniżej
    minimum (est ≤ siatka + tol); siatka nie może odbiegać od minimum o więcej niż błąd.
    """
    low = grid.log_value.log_value
    return estimate_log <= low + tol and low <= estimate_log + grid.error_bound + tol


def verdict(passed: bool, general_position: bool) -> str:
    """Etykieta porównania; poza położeniem ogólnym niezgodność nie obciąża estymatora."""
    if passed:
        return "PASS"
    return "FAIL" if general_position else "FAIL (not in general position)"
