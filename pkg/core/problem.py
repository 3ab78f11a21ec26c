# core/problem.py
"""
Typy domenowe i walidacja problemu: wymiary k̄, wykładniki docelowe q̄,
indeks szerokości n oraz skończona rodzina kul {(ν_α, p̄_α)}.

Wszystkie wykładniki trzymamy we współrzędnych odwrotnych x = 1/p
(x = 0 oznacza p = ∞, x = 1 oznacza p = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from django.core.exceptions import ValidationError

INF_TOKEN = "inf"

PValue = Union[int, float, str]


# --------------------------------------------------------------------------------------
# BŁĘDY
# --------------------------------------------------------------------------------------
class ProblemValidationError(ValidationError):
    """Błąd walidacji problemu – zawsze z ustalonym `code`."""

    default_code = "invalid"

    def __init__(self, message, code=None, params=None):
        super().__init__(message, code=code or self.default_code, params=params)


class DimensionMismatch(ProblemValidationError):
    default_code = "dimension_mismatch"


class RangeError(ProblemValidationError):
    default_code = "range"


class WidthIndexError(ProblemValidationError):
    """n poza zakresem [1, ⌊∏k_i/2⌋]."""

    default_code = "width_index"


class WidthsError(RuntimeError):
    """Błędy obliczeniowe (nie walidacyjne)."""


class CapacityError(WidthsError):
    pass


class RetryExhausted(WidthsError):
    pass


# --------------------------------------------------------------------------------------
# TYPY
# --------------------------------------------------------------------------------------
@dataclass(frozen=True)
class ReciprocalVector:
    x: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))

    def __len__(self) -> int:
        return len(self.x)

    def __iter__(self) -> Iterator[float]:
        return iter(self.x)

    def __getitem__(self, i: int) -> float:
        return self.x[i]

    @property
    def p(self) -> Tuple[float, ...]:
        return p_of_reciprocal(self.x)


@dataclass(frozen=True)
class BallSpec:
    nu: float
    p: ReciprocalVector

    @property
    def log_nu(self) -> float:
        return math.log(self.nu)


@dataclass(frozen=True)
class ProblemSpec:
    k: Tuple[int, ...]
    q: Tuple[float, ...]
    n: int
    balls: Tuple[BallSpec, ...]

    @property
    def d(self) -> int:
        return len(self.k)

    @property
    def y(self) -> Tuple[float, ...]:
        """Odwrotności wykładników docelowych, y_i = 1/q_i ∈ (0, 1/2]."""
        return tuple(1.0 / qi for qi in self.q)

    @property
    def log_k(self) -> Tuple[float, ...]:
        return tuple(math.log(ki) for ki in self.k)

    @property
    def max_n(self) -> int:
        return math.prod(self.k) // 2

    def points(self) -> List[ReciprocalVector]:
        return [b.p for b in self.balls]


@dataclass(frozen=True, order=True)
class LogValue:
    """Dodatnia wielkość przechowywana jako logarytm naturalny."""

    log_value: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    @classmethod
    def of(cls, value: float) -> "LogValue":
        return cls(math.log(value))


# --------------------------------------------------------------------------------------
# KONWERSJE p ↔ 1/p
# --------------------------------------------------------------------------------------
def _parse_p(raw: PValue) -> float:
    if isinstance(raw, str):
        if raw.strip().lower() in (INF_TOKEN, "infinity"):
            return math.inf
        try:
            return float(raw)
        except ValueError:
            raise RangeError(f"Niepoprawny wykładnik p: {raw!r}.") from None
    if isinstance(raw, bool):
        raise RangeError(f"Niepoprawny wykładnik p: {raw!r}.")
    return float(raw)


def reciprocal_of_p(p_values: Iterable[PValue]) -> ReciprocalVector:
    """[1, 2, ∞] -> [1, 0.5, 0]; p < 1 -> RangeError."""
    out = []
    for raw in p_values:
        p = _parse_p(raw)
        if math.isnan(p) or p < 1:
            raise RangeError(f"Wykładnik p musi leżeć w [1, ∞], otrzymano {raw!r}.")
        out.append(0.0 if math.isinf(p) else 1.0 / p)
    return ReciprocalVector(tuple(out))


def p_of_reciprocal(x: Iterable[float]) -> Tuple[float, ...]:
    return tuple(math.inf if xi == 0 else 1.0 / xi for xi in x)


# --------------------------------------------------------------------------------------
# WALIDACJA
# --------------------------------------------------------------------------------------
def _is_int(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, int):
        return True
    return isinstance(v, float) and v.is_integer()


def validate(problem: ProblemSpec) -> ProblemSpec:
    """
    Sprawdza problem i zwraca postać kanoniczną:
    - krotki, float/int,
    - usunięte duplikaty kul o identycznym (ν, p̄) (pierwsze wystąpienie zostaje).
    Kule zdominowane NIE są usuwane.
    Funkcja jest idempotentna.
    """
    d = len(problem.k)
    if d < 1:
        raise DimensionMismatch("Wektor k̄ nie może być pusty.")
    if len(problem.q) != d:
        raise DimensionMismatch(
            f"Długość q̄ ({len(problem.q)}) różni się od długości k̄ ({d}).")
    if not problem.balls:
        raise ProblemValidationError("Rodzina kul A nie może być pusta.", code="no_balls")
    for idx, ball in enumerate(problem.balls, start=1):
        if len(ball.p) != d:
            raise DimensionMismatch(
                f"Kula {idx}: długość p̄ ({len(ball.p)}) różni się od wymiaru {d}.")

    k: List[int] = []
    for ki in problem.k:
        if not _is_int(ki) or int(ki) < 1:
            raise RangeError(f"Każde k_i musi być dodatnią liczbą całkowitą, otrzymano {ki!r}.")
        k.append(int(ki))

    q: List[float] = []
    for qi in problem.q:
        qf = float(qi)
        if math.isnan(qf) or math.isinf(qf) or qf < 2:
            raise RangeError(f"Każde q_i musi spełniać 2 ≤ q_i < ∞, otrzymano {qi!r}.")
        q.append(qf)

    balls: List[BallSpec] = []
    seen = set()
    for idx, ball in enumerate(problem.balls, start=1):
        nu = float(ball.nu)
        if math.isnan(nu) or math.isinf(nu) or nu <= 0:
            raise RangeError(f"Kula {idx}: ν musi być dodatnie i skończone, otrzymano {ball.nu!r}.")
        for xi in ball.p:
            if math.isnan(xi) or xi < 0 or xi > 1:
                raise RangeError(f"Kula {idx}: współrzędna 1/p = {xi!r} poza [0, 1].")
        key = (nu, tuple(ball.p))
        if key in seen:
            continue
        seen.add(key)
        balls.append(BallSpec(nu=nu, p=ReciprocalVector(tuple(ball.p))))

    if not _is_int(problem.n):
        raise WidthIndexError(f"n musi być liczbą całkowitą, otrzymano {problem.n!r}.")
    n = int(problem.n)
    max_n = math.prod(k) // 2
    if n < 1 or n > max_n:
        raise WidthIndexError(
            f"n = {n} poza zakresem [1, {max_n}] (⌊∏k_i/2⌋).", params={"n": n, "max_n": max_n})

    return ProblemSpec(k=tuple(k), q=tuple(q), n=n, balls=tuple(balls))


def build_problem(
    k: Sequence[int],
    q: Sequence[float],
    n: int,
    balls: Sequence[Tuple[float, Sequence[PValue]]],
) -> ProblemSpec:
    """Wygodny konstruktor: kule podane jako (ν, p̄) w zwykłych wykładnikach."""
    specs = tuple(BallSpec(nu=nu, p=reciprocal_of_p(p)) for nu, p in balls)
    return validate(ProblemSpec(k=tuple(k), q=tuple(q), n=n, balls=specs))


def with_n(problem: ProblemSpec, n: int) -> ProblemSpec:
    return validate(replace(problem, n=n))


def with_points(problem: ProblemSpec, points: Sequence[Sequence[float]]) -> ProblemSpec:
    """Kopia problemu z nowymi punktami 1/p̄_α (te same ν_α, ta sama kolejność)."""
    balls = tuple(
        BallSpec(nu=b.nu, p=ReciprocalVector(tuple(x))) for b, x in zip(problem.balls, points)
    )
    return replace(problem, balls=balls)
