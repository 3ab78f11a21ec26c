# core/genpos.py
"""
Położenie ogólne punktów {1/p̄_α}: sprawdzanie warunków 1–3 oraz
dowolnie małe przesunięcia punktów, które te warunki realizują.

Warunek 4 (jednoznaczne minimum) zależy od (k̄, n) i raportuje go
estimator (EstimateResult.runners_up).
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from django.db import models

from .conf import widths_setting
from .estimator import estimate
from .geometry import affinely_independent, assemble_system, is_singular
from .problem import (
    CapacityError,
    ProblemSpec,
    RangeError,
    RetryExhausted,
    validate,
    with_points,
)

logger = logging.getLogger(__name__)


class Scope(models.TextChoices):
    FULL = "full", "pełne sprawdzenie warunku 3"
    SAMPLED = "sampled", "losowa podrodzina macierzy warunku 3"
    OFF = "off", "bez warunku 3"


@dataclass(frozen=True)
class Violation:
    predicate: int
    m: int
    indices: Tuple[int, ...]
    balls: Tuple[int, ...]
    plane: str = ""
    detail: str = ""

    def to_dict(self) -> Dict:
        # numery współrzędnych i kul od 1, jak w wyjściu tekstowym
        return dict(
            asdict(self),
            indices=[i + 1 for i in self.indices],
            balls=[b + 1 for b in self.balls],
        )


@dataclass
class GenPosReport:
    predicate1_violations: List[Violation] = field(default_factory=list)
    predicate2_violations: List[Violation] = field(default_factory=list)
    predicate3_checked: bool = False
    predicate3_sampled: bool = False
    predicate3_violations: List[Violation] = field(default_factory=list)

    @property
    def is_general_position(self) -> bool:
        return not (self.predicate1_violations or self.predicate2_violations or self.predicate3_violations)

    def first_violation(self) -> Optional[Violation]:
        for bucket in (self.predicate1_violations, self.predicate2_violations, self.predicate3_violations):
            if bucket:
                return bucket[0]
        return None

    def to_dict(self) -> Dict:
        return {
            "is_general_position": self.is_general_position,
            "predicate1_violations": [v.to_dict() for v in self.predicate1_violations],
            "predicate2_violations": [v.to_dict() for v in self.predicate2_violations],
            "predicate3_checked": self.predicate3_checked,
            "predicate3_sampled": self.predicate3_sampled,
            "predicate3_violations": [v.to_dict() for v in self.predicate3_violations],
        }


# --------------------------------------------------------------------------------------
# PŁASZCZYZNY Z̃_m (podziały I = I_2 ⊔ I_q ⊔ I_ω1 ⊔ …)
# --------------------------------------------------------------------------------------
@dataclass(frozen=True)
class Plane:
    pins: Tuple[Tuple[int, float], ...]
    groups: Tuple[Tuple[int, ...], ...]
    label: str

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(sorted({i for i, _ in self.pins} | {i for g in self.groups for i in g}))

    def equations(self, q: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
        d = len(q)
        y = [1.0 / float(qi) for qi in q]
        rows, rhs = [], []
        for i, value in self.pins:
            e = np.zeros(d)
            e[i] = 1.0
            rows.append(e)
            rhs.append(value)
        for g in self.groups:
            for a, b in zip(g, g[1:]):
                ca, cb = 1.0 / (0.5 - y[a]), 1.0 / (0.5 - y[b])
                e = np.zeros(d)
                e[a], e[b] = ca, -cb
                rows.append(e)
                rhs.append(y[a] * ca - y[b] * cb)
        return np.vstack(rows), np.asarray(rhs, dtype=float)


def _labelings(d: int, wide: Sequence[bool]) -> Iterator[List]:
    """Etykiety współrzędnych: None, '2', 'q' albo numer grupy ω (tylko q_i > 2)."""

    def rec(i: int, acc: List, groups: int):
        if i == d:
            yield list(acc)
            return
        for lab in (None, "2", "q"):
            acc.append(lab)
            yield from rec(i + 1, acc, groups)
            acc.pop()
        if wide[i]:
            for g in range(groups + 1):
                acc.append(g)
                yield from rec(i + 1, acc, max(groups, g + 1))
                acc.pop()

    yield from rec(0, [], 0)


def plane_family(q: Sequence[float], m: int) -> List[Plane]:
    """Wszystkie płaszczyzny o kowymiarze m − 1 z warunku 2 (bez duplikatów)."""
    d = len(q)
    wide = [float(qi) > 2.0 for qi in q]
    out: List[Plane] = []
    seen = set()
    for labels in _labelings(d, wide):
        groups: Dict[int, List[int]] = {}
        pins: List[Tuple[int, float]] = []
        for i, lab in enumerate(labels):
            if lab == "2":
                pins.append((i, 0.5))
            elif lab == "q":
                pins.append((i, 1.0 / float(q[i])))
            elif lab is not None:
                groups.setdefault(lab, []).append(i)
        if any(len(g) < 2 for g in groups.values()):
            continue
        if len(pins) + sum(len(g) - 1 for g in groups.values()) != m - 1:
            continue
        key = (tuple(sorted(pins)), tuple(sorted(tuple(g) for g in groups.values())))
        if key in seen:
            continue
        seen.add(key)
        parts = [f"x{i + 1}={v:.6g}" for i, v in key[0]]
        parts += ["ω′(" + ",".join(str(i + 1) for i in g) + ")" for g in key[1]]
        out.append(Plane(pins=key[0], groups=key[1], label=" ".join(parts)))
    return out


# --------------------------------------------------------------------------------------
# WARUNEK 3 – macierze ℬ ∈ ℳ̂_{m,I}
# --------------------------------------------------------------------------------------
def _row_options(problem: ProblemSpec, I: Tuple[int, ...]) -> List[Tuple[int, frozenset]]:
    d = problem.d
    out = []
    for star in I:
        if problem.q[star] <= 2.0:
            continue
        rest = [i for i in range(d) if i != star]
        for mask in range(2 ** len(rest)):
            out.append((star, frozenset(rest[b] for b in range(len(rest)) if mask >> b & 1)))
    return out


def _log_row(problem: ProblemSpec, I: Tuple[int, ...], option: Tuple[int, frozenset]) -> np.ndarray:
    star, t1 = option
    lk = problem.log_k
    y = problem.y
    t2 = [i for i in range(problem.d) if i != star and i not in t1]
    log_star = (
        0.5 * math.log(problem.n)
        - 0.5 * sum(lk[i] for i in t1)
        - y[star] * lk[star]
        - sum(y[i] * lk[i] for i in t2)
    ) / (0.5 - y[star])
    return np.asarray([log_star if i == star else (lk[i] if i in t1 else 0.0) for i in I])


def _b_matrix(problem, I, options, tol) -> Optional[np.ndarray]:
    A = np.vstack([_log_row(problem, I, opt) for opt in options])
    B = A[1:] - A[0]
    if np.linalg.matrix_rank(B, tol=tol) != len(I) - 1:
        return None
    return B


# --------------------------------------------------------------------------------------
# SPRAWDZENIE
# --------------------------------------------------------------------------------------
def _conv_meets_plane(points, rows, rhs, tol) -> bool:
    M, b = assemble_system(points, rows, rhs)
    k = M.shape[1]
    if np.linalg.matrix_rank(M, tol=tol) < k:
        return True
    lam, *_ = np.linalg.lstsq(M, b, rcond=None)
    residual = float(np.linalg.norm(M @ lam - b))
    return residual <= tol * max(1.0, float(np.linalg.norm(b))) and bool(np.all(lam >= -tol))


def check_general_position(
    problem: ProblemSpec,
    tol: Optional[float] = None,
    scope: Optional[str] = None,
    seed: int = 0,
    sample_size: Optional[int] = None,
    budget: Optional[int] = None,
) -> GenPosReport:
    if tol is None:
        tol = widths_setting("TOLERANCE")
    scope = Scope(scope or widths_setting("GENPOS_SCOPE"))
    if sample_size is None:
        sample_size = int(widths_setting("GENPOS_SAMPLE_SIZE"))
    if budget is None:
        budget = int(widths_setting("GENPOS_BUDGET"))

    d = problem.d
    size = len(problem.balls)
    X = [list(b.p) for b in problem.balls]
    report = GenPosReport()

    # --- warunek 1: rzuty na I (#I = m − 1) afinicznie niezależne
    for m in range(2, min(d + 1, size) + 1):
        for I in combinations(range(d), m - 1):
            for balls in combinations(range(size), m):
                pts = [[X[b][i] for i in I] for b in balls]
                if not affinely_independent(pts, tol=tol):
                    report.predicate1_violations.append(Violation(1, m, I, balls))

    # --- warunek 2: komplementarność i rozłączność z płaszczyznami Z̃_m
    for m in range(2, d + 2):
        for plane in plane_family(problem.q, m):
            rows, rhs = plane.equations(problem.q)
            for balls in combinations(range(size), m) if size >= m else ():
                M, _ = assemble_system([X[b] for b in balls], rows, rhs)
                if is_singular(M, tol):
                    report.predicate2_violations.append(
                        Violation(2, m, plane.indices, balls, plane.label, "not_complementary"))
            for kk in range(1, min(m - 1, size) + 1):
                for balls in combinations(range(size), kk):
                    if _conv_meets_plane([X[b] for b in balls], rows, rhs, tol):
                        report.predicate2_violations.append(
                            Violation(2, m, plane.indices, balls, plane.label, "intersects"))

    # --- warunek 3: niezdegenerowanie macierzy (Σ_i (x_βk,i − x_β1,i) B_j,i)
    if scope == Scope.OFF:
        return report
    rng = np.random.default_rng(seed)
    report.predicate3_checked = True
    for m in range(2, min(d, size) + 1):
        tuples = list(combinations(range(size), m))
        for I in combinations(range(d), m):
            opts = _row_options(problem, I)
            if not opts:
                continue
            family = len(opts) ** m
            if scope == Scope.FULL:
                if family * len(tuples) > budget:
                    raise CapacityError(
                        f"Warunek 3: {family} macierzy × {len(tuples)} krotek przekracza budżet {budget}.")
                choices = product(opts, repeat=m)
            else:
                report.predicate3_sampled = report.predicate3_sampled or family > sample_size
                if family <= sample_size:
                    choices = product(opts, repeat=m)
                else:
                    choices = (
                        tuple(opts[int(j)] for j in rng.integers(0, len(opts), size=m))
                        for _ in range(sample_size)
                    )
            for options in choices:
                B = _b_matrix(problem, I, options, tol)
                if B is None:
                    continue
                for balls in tuples:
                    D = np.asarray([[X[b][i] - X[balls[0]][i] for i in I] for b in balls[1:]])
                    if is_singular(D @ B.T, tol):
                        star = ",".join(str(o[0] + 1) for o in options)
                        report.predicate3_violations.append(
                            Violation(3, m, I, balls, detail=f"i*=({star})"))
                        break
    return report


# --------------------------------------------------------------------------------------
# PRZESUNIĘCIA
# --------------------------------------------------------------------------------------
def perturb(
    problem: ProblemSpec,
    epsilon: float,
    seed: int = 0,
    scope: Optional[str] = None,
    tol: Optional[float] = None,
    retries: Optional[int] = None,
) -> ProblemSpec:
    """
    Przesuwa punkty 1/p̄_α o co najwyżej ε na współrzędną, aż raport położenia
    ogólnego będzie czysty. Kolejno: warunek 1, 2, 3; za każdym razem jeden punkt
    z naruszenia, tylko na współrzędnych z naruszenia. Deterministyczne dla ziarna.
    """
    if not epsilon > 0:
        raise RangeError(f"ε = {epsilon!r} musi być dodatnie.")
    if retries is None:
        retries = int(widths_setting("PERTURB_RETRIES"))
    rng = np.random.default_rng(seed)
    base = np.asarray([list(b.p) for b in problem.balls], dtype=float)
    current = base.copy()

    last: Optional[Violation] = None
    for attempt in range(retries + 1):
        candidate = with_points(problem, current.tolist())
        report = check_general_position(candidate, tol=tol, scope=scope, seed=seed)
        last = report.first_violation()
        if last is None:
            logger.info("Położenie ogólne po %d przesunięciach (ε = %g).", attempt, epsilon)
            return validate(candidate)
        ball = int(last.balls[int(rng.integers(0, len(last.balls)))])
        coords = list(last.indices) or list(range(problem.d))
        nudge = rng.uniform(-epsilon, epsilon, size=len(coords))
        current[ball, coords] = np.clip(base[ball, coords] + nudge, 0.0, 1.0)
        logger.debug("Przesunięcie %d: kula %d, współrzędne %s (warunek %d).",
                     attempt + 1, ball, coords, last.predicate)

    raise RetryExhausted(f"Nie osiągnięto położenia ogólnego w {retries} próbach; ostatnie naruszenie: {last}.")


def stability_probe(
    problem: ProblemSpec,
    epsilons: Sequence[float],
    seed: int = 0,
    scope: Optional[str] = None,
) -> List[Tuple[float, float]]:
    """Dla każdego ε: |log Ψ(przesunięty) − log Ψ(wyjściowy)|."""
    base = estimate(problem).log_value.log_value
    rows: List[Tuple[float, float]] = []
    for eps in epsilons:
        if eps == 0:
            rows.append((0.0, 0.0))
            continue
        moved = perturb(problem, eps, seed=seed, scope=scope)
        rows.append((float(eps), abs(estimate(moved).log_value.log_value - base)))
    return rows
