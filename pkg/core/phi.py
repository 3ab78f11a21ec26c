# core/phi.py
"""
Rachunek wykładników: ω, ω′, permutacja porządkująca σ, liczniki μ i ν
oraz funkcja Φ(p̄, q̄, k̄, n) – rząd szerokości pojedynczej kuli.

Wszystkie iloczyny potęg liczymy w dziedzinie logarytmów: Σ e_i·log b_i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .conf import widths_setting
from .problem import LogValue, RangeError, ReciprocalVector


@dataclass(frozen=True)
class PhiContext:
    sigma: Tuple[int, ...]          # indeksy 0-based, ω rosnąco
    omega: Tuple[float, ...]        # ω_i w oryginalnej kolejności współrzędnych
    mu: int
    nu_count: int
    p_star: ReciprocalVector        # min(x_i, 1/2), czyli 1/max(p_i, 2)


# --------------------------------------------------------------------------------------
# ω i ω′
# --------------------------------------------------------------------------------------
def omega(x: float, y: float) -> float:
    """ω_{p,q} dla x = 1/p, y = 1/q; obcięte do [0, 1]."""
    if y <= 0 or y > 0.5:
        raise RangeError(f"1/q = {y!r} poza (0, 1/2].")
    if x < y:
        return 0.0
    if x >= 0.5:
        return 1.0
    return (x - y) / (0.5 - y)


def omega_prime(x: float, y: float) -> float:
    """ω′ bez obcinania; określone tylko dla q > 2."""
    if y <= 0 or y >= 0.5:
        raise RangeError(f"ω′ wymaga 0 < 1/q < 1/2, otrzymano 1/q = {y!r}.")
    return (x - y) / (0.5 - y)


def _targets(q: Sequence[float]) -> Tuple[float, ...]:
    return tuple(1.0 / float(qi) for qi in q)


def build_context(
    p: ReciprocalVector,
    q: Sequence[float],
    tol: Optional[float] = None,
    sigma: Optional[Sequence[int]] = None,
) -> PhiContext:
    """
    σ sortuje współrzędne stabilnie po ω (remisy po indeksie).
    Można podać własną σ – musi być permutacją zgodną z porządkiem ω.
    """
    if tol is None:
        tol = widths_setting("OMEGA_TOLERANCE")
    y = _targets(q)
    om = tuple(omega(xi, yi) for xi, yi in zip(p, y))
    d = len(om)

    if sigma is None:
        order = tuple(sorted(range(d), key=lambda i: om[i]))
    else:
        order = tuple(int(i) for i in sigma)
        if sorted(order) != list(range(d)):
            raise RangeError(f"σ = {list(sigma)} nie jest permutacją {d} elementów.")
        for a, b in zip(order, order[1:]):
            if om[a] > om[b] + tol:
                raise RangeError("Podana σ nie porządkuje ω niemalejąco.")

    mu = sum(1 for w in om if w <= tol)
    nu_count = sum(1 for w in om if w < 1.0 - tol)
    p_star = ReciprocalVector(tuple(min(xi, 0.5) for xi in p))
    return PhiContext(sigma=order, omega=om, mu=mu, nu_count=nu_count, p_star=p_star)


# --------------------------------------------------------------------------------------
# Φ – definicja przez minimum po t
# --------------------------------------------------------------------------------------
def phi(
    p: ReciprocalVector,
    q: Sequence[float],
    k: Sequence[int],
    n: int,
    tol: Optional[float] = None,
    sigma: Optional[Sequence[int]] = None,
) -> LogValue:
    """
    log Φ = Σ_{j≤μ}(1/q − 1/p) log k
            + min{0, min_{μ<t≤d} [Σ_{μ<j<t}(1/q − 1/p*) log k + ω_t·B_t]},
    B_t = −½ log n + Σ_{j<t} ½ log k + Σ_{j≥t} (1/q) log k (wszystko po σ).
    Puste minimum wewnętrzne (μ = d) to +∞.
    """
    ctx = build_context(p, q, tol=tol, sigma=sigma)
    y = _targets(q)
    lk = [math.log(ki) for ki in k]
    s = ctx.sigma
    d = len(s)
    log_n = math.log(n)

    mu_block = sum((y[s[j]] - p[s[j]]) * lk[s[j]] for j in range(ctx.mu))

    inner = math.inf
    prefix = 0.0
    for t in range(ctx.mu, d):
        base = (
            -0.5 * log_n
            + sum(0.5 * lk[s[j]] for j in range(t))
            + sum(y[s[j]] * lk[s[j]] for j in range(t, d))
        )
        inner = min(inner, prefix + ctx.omega[s[t]] * base)
        prefix += (y[s[t]] - ctx.p_star[s[t]]) * lk[s[t]]

    return LogValue(mu_block + min(0.0, inner))


# --------------------------------------------------------------------------------------
# Φ – postać kawałkami (przedziały n między punktami załamania)
# --------------------------------------------------------------------------------------
def phi_piecewise(
    p: ReciprocalVector,
    q: Sequence[float],
    k: Sequence[int],
    n: int,
    tol: Optional[float] = None,
) -> LogValue:
    """
    Lokalizuje n między punktami załamania
        log B(t) = Σ_{i≤t} log k_σ(i) + Σ_{i>t} (2/q_σ(i)) log k_σ(i),  t = μ..ν
    i liczy odpowiedni wzór zamknięty. Niezależne od `phi` – służy do kontroli.
    """
    ctx = build_context(p, q, tol=tol)
    y = _targets(q)
    s = ctx.sigma
    d = len(s)
    lk = [math.log(k[i]) for i in s]
    ys = [y[i] for i in s]
    xs = [p[i] for i in s]
    log_n = math.log(n)
    mu, nu = ctx.mu, ctx.nu_count

    def breakpoint(t: int) -> float:
        return sum(lk[:t]) + sum(2.0 * ys[i] * lk[i] for i in range(t, d))

    def head(t: int) -> float:
        return sum((ys[i] - xs[i]) * lk[i] for i in range(t))

    def bracket(t: int) -> float:
        return -0.5 * log_n + sum(0.5 * v for v in lk[:t]) + sum(ys[i] * lk[i] for i in range(t, d))

    if log_n <= breakpoint(mu):
        return LogValue(head(mu))
    for t in range(mu + 1, nu + 1):
        if breakpoint(t - 1) <= log_n <= breakpoint(t):
            w = ctx.omega[s[t - 1]]
            return LogValue(head(t - 1) + w * bracket(t - 1))
    return LogValue(head(nu) + bracket(nu))


def phi_levels(
    p: ReciprocalVector,
    q: Sequence[float],
    k: Sequence[int],
    n: int,
    tol: Optional[float] = None,
) -> LogValue:
    """
    Postać bez permutacji (tylko dla wszystkich q_j > 2): współrzędne grupujemy
    po poziomie ω. Trzeci, niezależny ewaluator Φ.
    """
    if any(float(qi) <= 2.0 for qi in q):
        raise RangeError("phi_levels wymaga q_j > 2 dla wszystkich j.")
    if tol is None:
        tol = widths_setting("OMEGA_TOLERANCE")
    y = _targets(q)
    d = len(y)
    om = [omega(p[j], y[j]) for j in range(d)]
    lk = [math.log(kj) for kj in k]
    log_n = math.log(n)

    zero = [j for j in range(d) if om[j] <= tol]
    low = sum(lk[j] for j in zero) + sum(2.0 * y[j] * lk[j] for j in range(d) if j not in zero)
    if log_n <= low:
        return LogValue(sum((y[j] - p[j]) * lk[j] for j in zero))

    levels = sorted({w for w in om if tol < w < 1.0 - tol})
    for w in levels:
        below = [j for j in range(d) if om[j] < w]
        at_or_above = [j for j in range(d) if om[j] >= w]
        lower = sum(lk[j] for j in below) + sum(2.0 * y[j] * lk[j] for j in at_or_above)
        upper = (
            sum(lk[j] for j in range(d) if om[j] <= w)
            + sum(2.0 * y[j] * lk[j] for j in range(d) if om[j] > w)
        )
        if lower <= log_n <= upper:
            bracket = (
                -0.5 * log_n
                + sum(0.5 * lk[j] for j in below)
                + sum(y[j] * lk[j] for j in at_or_above)
            )
            return LogValue(sum((y[j] - p[j]) * lk[j] for j in below) + w * bracket)

    big = [j for j in range(d) if om[j] < 1.0 - tol]
    rest = [j for j in range(d) if j not in big]
    return LogValue(
        sum((y[j] - p[j]) * lk[j] for j in big)
        - 0.5 * log_n
        + sum(0.5 * lk[j] for j in big)
        + sum(y[j] * lk[j] for j in rest)
    )


# --------------------------------------------------------------------------------------
# Φ wektorowo – wiele punktów naraz (siatka wyroczni)
# --------------------------------------------------------------------------------------
def phi_batch(
    X: np.ndarray,
    q: Sequence[float],
    k: Sequence[int],
    n: int,
    tol: Optional[float] = None,
) -> np.ndarray:
    """log Φ dla każdego wiersza X (kształt (N, d)); ta sama definicja co `phi`."""
    if tol is None:
        tol = widths_setting("OMEGA_TOLERANCE")
    X = np.atleast_2d(np.asarray(X, dtype=float))
    y = 1.0 / np.asarray(q, dtype=float)
    lk = np.log(np.asarray(k, dtype=float))
    N, d = X.shape

    denom = 0.5 - y
    mid = (X - y) / np.where(denom > 0, denom, 1.0)
    W = np.where(X < y, 0.0, np.where(X >= 0.5, 1.0, mid))

    order = np.argsort(W, axis=1, kind="stable")
    Ws = np.take_along_axis(W, order, axis=1)
    Xs = np.take_along_axis(X, order, axis=1)
    Ys = y[order]
    Ls = lk[order]
    Xstar = np.minimum(Xs, 0.5)

    mu = (Ws <= tol).sum(axis=1)
    idx = np.arange(d)[None, :]
    in_mu = idx < mu[:, None]

    mu_block = np.where(in_mu, (Ys - Xs) * Ls, 0.0).sum(axis=1)

    half = 0.5 * Ls
    half_prefix = np.cumsum(half, axis=1) - half
    yl = Ys * Ls
    q_suffix = np.cumsum(yl[:, ::-1], axis=1)[:, ::-1]
    base = -0.5 * math.log(n) + half_prefix + q_suffix

    star = np.where(in_mu, 0.0, (Ys - Xstar) * Ls)
    star_prefix = np.cumsum(star, axis=1) - star
    term = np.where(in_mu, np.inf, star_prefix + Ws * base)
    inner = term.min(axis=1)
    return mu_block + np.minimum(0.0, inner)
