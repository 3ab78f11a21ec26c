# core/validators.py
import math

from .problem import DimensionMismatch, RangeError


def _is_number(v, finite: bool = True) -> bool:
    # bool to nie liczba; int spoza zakresu float odrzucamy
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        return False
    try:
        value = float(v)
    except OverflowError:
        return False
    return math.isfinite(value) or not finite


def validate_positive_int_list(value):
    # k̄: niepusta lista dodatnich liczb całkowitych
    if not isinstance(value, list) or not value:
        raise DimensionMismatch("Oczekiwano niepustej listy.")
    for v in value:
        if not _is_number(v) or float(v) != int(v) or int(v) < 1:
            raise RangeError(f"Każde k_i musi być dodatnią liczbą całkowitą, otrzymano {v!r}.")


def validate_q_list(value):
    if not isinstance(value, list) or not value:
        raise DimensionMismatch("Oczekiwano niepustej listy.")
    for v in value:
        if not _is_number(v) or v < 2:
            raise RangeError(f"Każde q_i musi spełniać 2 ≤ q_i < ∞, otrzymano {v!r}.")


def validate_ball_list(value):
    """Lista obiektów {"nu": …, "p": [...]} albo {"nu": …, "x": [...]}."""
    if not isinstance(value, list) or not value:
        raise RangeError("Rodzina kul musi być niepustą listą.", code="no_balls")
    for idx, ball in enumerate(value, start=1):
        if not isinstance(ball, dict) or "nu" not in ball:
            raise RangeError(f"Kula {idx}: oczekiwano obiektu z kluczem 'nu'.")
        if ("p" in ball) == ("x" in ball):
            raise RangeError(f"Kula {idx}: podaj dokładnie jedno z 'p' albo 'x'.")
        coords = ball.get("p", ball.get("x"))
        if not isinstance(coords, list):
            raise DimensionMismatch(f"Kula {idx}: wykładniki muszą być listą.")
        for v in coords:
            if not (_is_number(v, finite=False) or ("p" in ball and isinstance(v, str))):
                raise RangeError(f"Kula {idx}: niepoprawna współrzędna {v!r}.")
        nu = ball["nu"]
        if not _is_number(nu):
            raise RangeError(f"Kula {idx}: ν musi być liczbą, otrzymano {nu!r}.")
