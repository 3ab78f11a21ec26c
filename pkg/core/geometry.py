# core/geometry.py
"""
Płaszczyzny kandydujące Z ∈ 𝒵_m oraz układ na wagi simpleksowe λ.

Współrzędne 0-based wewnątrz, etykiety 1-based tylko do wyświetlania.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from django.db import models

from .conf import widths_setting
from .phi import omega_prime
from .problem import RangeError, ReciprocalVector, p_of_reciprocal

logger = logging.getLogger(__name__)


class ZKind(models.TextChoices):
    Q_FACE = "QFace", "x_i = 1/q_i"
    HALF_FACE = "HalfFace", "x_i = 1/2"
    OMEGA_EQUALIZER = "OmegaEqualizer", "ω′ wyrównane"


KIND_ORDER = {ZKind.Q_FACE: 0, ZKind.HALF_FACE: 1, ZKind.OMEGA_EQUALIZER: 2}


class RejectionReason(models.TextChoices):
    SINGULAR = "Singular", "układ osobliwy (płaszczyzny nie są komplementarne)"
    NON_POSITIVE_WEIGHT = "NonPositiveWeight", "waga λ_j ≤ 0"
    OMEGA_OUT_OF_RANGE = "OmegaOutOfRange", "wspólne ω′ poza (0, 1)"


@dataclass(frozen=True)
class CandidateZ:
    kind: ZKind
    indices: Tuple[int, ...]
    m: int

    def equations(self, q: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
        """Wiersze a·x = b opisujące aff Z; zawsze m − 1 wierszy."""
        d = len(q)
        y = [1.0 / float(qi) for qi in q]
        rows: List[np.ndarray] = []
        rhs: List[float] = []

        def unit(i: int) -> np.ndarray:
            e = np.zeros(d)
            e[i] = 1.0
            return e

        if self.kind == ZKind.Q_FACE:
            for i in self.indices:
                rows.append(unit(i))
                rhs.append(y[i])
        elif self.kind == ZKind.HALF_FACE:
            for i in self.indices:
                rows.append(unit(i))
                rhs.append(0.5)
        else:
            wide = [i for i in self.indices if float(q[i]) > 2.0]
            for a, b in zip(wide, wide[1:]):
                ca, cb = 1.0 / (0.5 - y[a]), 1.0 / (0.5 - y[b])
                rows.append(unit(a) * ca - unit(b) * cb)
                rhs.append(y[a] * ca - y[b] * cb)
            for j in self.indices:
                if float(q[j]) <= 2.0:
                    rows.append(unit(j))
                    rhs.append(0.5)

        if not rows:
            return np.zeros((0, d)), np.zeros(0)
        return np.vstack(rows), np.asarray(rhs, dtype=float)

    def canonical(self, q: Sequence[float]) -> tuple:
        """Postać kanoniczna – ściany QFace i HalfFace pokrywają się, gdy q_i = 2."""
        if self.kind == ZKind.OMEGA_EQUALIZER:
            return ("omega", self.indices)
        value = (lambda i: 1.0 / float(q[i])) if self.kind == ZKind.Q_FACE else (lambda i: 0.5)
        return ("pin", tuple((i, value(i)) for i in self.indices))

    def sort_key(self) -> tuple:
        return (KIND_ORDER[ZKind(self.kind)], self.indices)

    @property
    def label(self) -> str:
        inner = ",".join(str(i + 1) for i in self.indices)
        return f"{ZKind(self.kind).value}{{{inner}}}"


@dataclass(frozen=True)
class WeightSolution:
    lambdas: Tuple[float, ...]
    theta_hat: ReciprocalVector
    omega_common: Optional[float] = None

    @property
    def theta(self) -> Tuple[float, ...]:
        return p_of_reciprocal(self.theta_hat)


@dataclass(frozen=True)
class Rejection:
    reason: RejectionReason
    detail: str = ""

    def __str__(self):
        return f"{RejectionReason(self.reason).value}: {self.detail}" if self.detail else str(self.reason)


# --------------------------------------------------------------------------------------
# ENUMERACJA 𝒵_m
# --------------------------------------------------------------------------------------
def enumerate_Z(m: int, q: Sequence[float], tol: Optional[float] = None) -> List[CandidateZ]:
    """
    Wszystkie płaszczyzny 𝒵_m: ściany QFace / HalfFace (#I = m − 1) i
    OmegaEqualizer (#I = m, co najmniej dwa q_i > 2). Duplikaty (q_i = 2) usuwane.
    """
    if tol is None:
        tol = widths_setting("TOLERANCE")
    d = len(q)
    if m < 1 or m > d + 1:
        raise RangeError(f"m = {m} poza zakresem [1, {d + 1}].")
    if m == 1:
        return [CandidateZ(ZKind.Q_FACE, (), 1)]

    out: List[CandidateZ] = []
    seen = set()
    candidates = [CandidateZ(ZKind.Q_FACE, I, m) for I in combinations(range(d), m - 1)]
    candidates += [CandidateZ(ZKind.HALF_FACE, I, m) for I in combinations(range(d), m - 1)]
    if m <= d:
        candidates += [
            CandidateZ(ZKind.OMEGA_EQUALIZER, I, m)
            for I in combinations(range(d), m)
            if sum(1 for i in I if float(q[i]) > 2.0) >= 2
        ]

    for z in candidates:
        key = z.canonical(q)
        if key in seen:
            continue
        rows, _ = z.equations(q)
        if np.linalg.matrix_rank(rows, tol=tol) != m - 1:
            logger.warning("Pominięto %s: kowymiar różny od %d.", z.label, m - 1)
            continue
        seen.add(key)
        out.append(z)
    return out


# --------------------------------------------------------------------------------------
# UKŁAD NA λ
# --------------------------------------------------------------------------------------
def assemble_system(
    points: Sequence[Sequence[float]], rows: np.ndarray, rhs: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """{Σ λ_j = 1} ∪ {a·(Σ λ_j x_j) = b dla każdego wiersza płaszczyzny}."""
    P = np.asarray([list(pt) for pt in points], dtype=float)
    M = np.vstack([np.ones((1, P.shape[0])), np.asarray(rows, dtype=float).reshape(-1, P.shape[1]) @ P.T])
    b = np.concatenate([[1.0], np.asarray(rhs, dtype=float)])
    return M, b


def is_singular(M: np.ndarray, cutoff: float) -> bool:
    """|det M| względem iloczynu norm wierszy (iloraz Hadamarda) ≤ cutoff."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return False
    norms = np.linalg.norm(M, axis=1)
    if np.any(norms <= np.finfo(float).tiny):
        return True
    return abs(np.linalg.det(M)) <= cutoff * float(np.prod(norms))


def solve_weights(
    points: Sequence[ReciprocalVector],
    Z: CandidateZ,
    q: Sequence[float],
    tol: Optional[float] = None,
) -> Union[WeightSolution, Rejection]:
    """
    Rozwiązuje układ m×m na λ. Osobliwość = brak komplementarności
    aff{x_j} i aff Z (albo afiniczna zależność punktów).
    """
    if tol is None:
        tol = widths_setting("TOLERANCE")
    if len(points) != Z.m:
        raise RangeError(f"Liczba punktów ({len(points)}) różna od m = {Z.m}.")

    rows, rhs = Z.equations(q)
    M, b = assemble_system(points, rows, rhs)
    if is_singular(M, tol):
        return Rejection(RejectionReason.SINGULAR, Z.label)

    lam = np.linalg.solve(M, b)
    if np.any(lam <= tol):
        return Rejection(
            RejectionReason.NON_POSITIVE_WEIGHT,
            f"{Z.label}: λ = {[round(float(v), 12) for v in lam]}",
        )

    P = np.asarray([list(pt) for pt in points], dtype=float)
    theta_hat = np.clip(lam @ P, 0.0, 1.0)

    omega_common = None
    if Z.kind == ZKind.OMEGA_EQUALIZER:
        i0 = next(i for i in Z.indices if float(q[i]) > 2.0)
        omega_common = omega_prime(float(theta_hat[i0]), 1.0 / float(q[i0]))
        if not (tol < omega_common < 1.0 - tol):
            return Rejection(RejectionReason.OMEGA_OUT_OF_RANGE, f"{Z.label}: ω′ = {omega_common:.12g}")

    return WeightSolution(
        lambdas=tuple(float(v) for v in lam),
        theta_hat=ReciprocalVector(tuple(float(v) for v in theta_hat)),
        omega_common=omega_common,
    )


def affinely_independent(points: Sequence[Sequence[float]], tol: Optional[float] = None) -> bool:
    """Różnice od pierwszego punktu mają pełny rząd (najmniejsza wartość osobliwa > tol·max(σ_max, 1))."""
    if tol is None:
        tol = widths_setting("TOLERANCE")
    P = np.asarray([list(pt) for pt in points], dtype=float)
    if P.shape[0] <= 1:
        return True
    D = P[1:] - P[0]
    if D.shape[0] > D.shape[1]:
        return False
    sv = np.linalg.svd(D, compute_uv=False)
    return float(sv.min()) > tol * max(float(sv.max()), 1.0)
