# core/witness.py
"""
Świadek dolnego oszacowania dla pojedynczej kuli (m = 1):
parametry s̄, zaokrąglone ū, skala ν_α ∏ u_i^{−1/p_{α,i}} oraz wartość
dolnego oszacowania dla wielościanu uśrednionych oktaedrów.

Samego wielościanu nie budujemy – liczymy tylko jego parametry.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from django.db import models

from .conf import widths_setting
from .phi import build_context
from .problem import LogValue, ProblemSpec, RangeError

logger = logging.getLogger(__name__)

ROUNDING_SLACK = 1e-9


class Regime(models.TextChoices):
    LOW = "low", "n ≤ B(μ)"
    MIDDLE = "middle", "B(t−1) < n ≤ B(t)"
    HIGH = "high", "n > B(ν)"


@dataclass(frozen=True)
class WitnessSet:
    alpha: int
    s: Tuple[float, ...]
    u: Tuple[int, ...]
    scale_log: float
    theoremA_log_value: float
    regime: Regime
    t: Optional[int] = None     # 1-based pozycja w σ, tylko dla MIDDLE

    @property
    def log_value(self) -> float:
        """Dolne oszacowanie świadka: skala × wartość dla wielościanu."""
        return self.scale_log + self.theoremA_log_value

    def to_dict(self) -> Dict:
        return {
            "alpha": self.alpha + 1,
            "s": list(self.s),
            "u": list(self.u),
            "scale_log": self.scale_log,
            "theoremA_log_value": self.theoremA_log_value,
            "log_value": self.log_value,
            "regime": str(self.regime),
            "t": self.t,
        }


@dataclass(frozen=True)
class InclusionRow:
    beta: int
    lhs_log: float
    rhs_log: float

    @property
    def margin(self) -> float:
        return self.rhs_log - self.lhs_log


@dataclass
class InclusionReport:
    alpha: int
    slack: float
    rows: List[InclusionRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.margin >= -self.slack for r in self.rows)

    @property
    def failures(self) -> List[InclusionRow]:
        return [r for r in self.rows if r.margin < -self.slack]

    def to_dict(self) -> Dict:
        return {
            "alpha": self.alpha + 1,
            "slack": self.slack,
            "passed": self.passed,
            "rows": [
                {"beta": r.beta + 1, "lhs_log": r.lhs_log, "rhs_log": r.rhs_log, "margin": r.margin}
                for r in self.rows
            ],
        }


# --------------------------------------------------------------------------------------
# WARTOŚĆ DLA WIELOŚCIANU
# --------------------------------------------------------------------------------------
def theoremA_value(q: Sequence[float], k: Sequence[int], s: Sequence[float], n: int) -> LogValue:
    """
    n ≤ ∏ k^{2/q} s^{1−2/q}:  ∏ s^{1/q}
    w przeciwnym razie:        n^{−1/2} ∏ k^{1/q} s^{1/2}
    """
    if not (len(q) == len(k) == len(s)):
        raise RangeError("q̄, k̄ i s̄ muszą mieć tę samą długość.")
    if n < 1:
        raise RangeError(f"n = {n} musi być ≥ 1.")
    for si, ki in zip(s, k):
        if not (1.0 - ROUNDING_SLACK <= float(si) <= float(ki) * (1.0 + ROUNDING_SLACK)):
            raise RangeError(f"s_i = {si!r} poza [1, {ki}].")

    y = [1.0 / float(qi) for qi in q]
    lk = [math.log(ki) for ki in k]
    ls = [math.log(max(float(si), 1.0)) for si in s]
    log_n = math.log(n)

    log_bp = sum(2.0 * yi * a + (1.0 - 2.0 * yi) * b for yi, a, b in zip(y, lk, ls))
    if log_n <= log_bp:
        return LogValue(sum(yi * b for yi, b in zip(y, ls)))
    return LogValue(-0.5 * log_n + sum(yi * a for yi, a in zip(y, lk)) + 0.5 * sum(ls))


# --------------------------------------------------------------------------------------
# KONSTRUKCJA ŚWIADKA
# --------------------------------------------------------------------------------------
def _round_up(s: float, k: int) -> int:
    return min(max(math.ceil(s - ROUNDING_SLACK), 1), int(k))


def build_witness_m1(problem: ProblemSpec, alpha: int) -> WitnessSet:
    if not 0 <= alpha < len(problem.balls):
        raise RangeError(f"Numer kuli α = {alpha + 1} poza zakresem [1, {len(problem.balls)}].")
    ball = problem.balls[alpha]
    ctx = build_context(ball.p, problem.q)
    sig = ctx.sigma
    d = problem.d
    lk = [problem.log_k[i] for i in sig]
    ys = [problem.y[i] for i in sig]
    log_n = math.log(problem.n)
    mu, nu = ctx.mu, ctx.nu_count

    def breakpoint(t: int) -> float:
        return sum(lk[:t]) + sum(2.0 * ys[i] * lk[i] for i in range(t, d))

    log_s = [0.0] * d   # w kolejności σ
    t_mid: Optional[int] = None
    if log_n <= breakpoint(mu):
        regime = Regime.LOW
        full = mu
    else:
        full = nu
        regime = Regime.HIGH
        for t in range(mu + 1, nu + 1):
            if breakpoint(t - 1) < log_n <= breakpoint(t):
                regime, t_mid, full = Regime.MIDDLE, t, t - 1
                break
    for i in range(full):
        log_s[i] = lk[i]
    if t_mid is not None:
        j = t_mid - 1
        raw = (0.5 * log_n - 0.5 * sum(lk[:j]) - sum(ys[i] * lk[i] for i in range(j, d))) / (0.5 - ys[j])
        log_s[j] = min(max(raw, 0.0), lk[j])

    s = [1.0] * d
    u = [1] * d
    for pos, i in enumerate(sig):
        if pos < full:
            s[i] = float(problem.k[i])
            u[i] = int(problem.k[i])
        elif t_mid is not None and pos == t_mid - 1:
            s[i] = math.exp(log_s[pos])
            u[i] = _round_up(s[i], problem.k[i])

    scale_log = ball.log_nu - sum(xi * math.log(ui) for xi, ui in zip(ball.p, u))
    value = theoremA_value(problem.q, problem.k, u, problem.n).log_value
    logger.debug("Świadek α = %d: %s, s̄ = %s, ū = %s", alpha, regime, s, u)
    return WitnessSet(
        alpha=alpha,
        s=tuple(s),
        u=tuple(u),
        scale_log=scale_log,
        theoremA_log_value=value,
        regime=regime,
        t=t_mid,
    )


def inclusion_check(problem: ProblemSpec, witness: WitnessSet, slack: Optional[float] = None) -> InclusionReport:
    """ν_α ∏ s_i^{1/p_β,i − 1/p_α,i} ≤ ν_β dla każdego β ∈ A (w logarytmach)."""
    if slack is None:
        slack = widths_setting("TOLERANCE")
    a = problem.balls[witness.alpha]
    ls = [math.log(si) for si in witness.s]
    report = InclusionReport(alpha=witness.alpha, slack=slack)
    for beta, b in enumerate(problem.balls):
        lhs = a.log_nu + sum((xb - xa) * v for xb, xa, v in zip(b.p, a.p, ls))
        report.rows.append(InclusionRow(beta=beta, lhs_log=lhs, rhs_log=b.log_nu))
    if not report.passed:
        logger.info("Inkluzja W ⊂ 2M nie zachodzi dla α = %d: β = %s",
                    witness.alpha + 1, [r.beta + 1 for r in report.failures])
    return report
