# core/tests/helpers.py
import math

import numpy as np

from core.problem import BallSpec, ProblemSpec, ReciprocalVector, build_problem, validate

# d = 1, q = 4, k = 16, n = 4; kule (ν=1, p=1) i (ν=1/4, p=∞)
TWO_BALL = {"k": [16], "q": [4], "n": 4, "balls": [{"nu": 1, "p": [1]}, {"nu": 0.25, "p": ["inf"]}]}


def two_ball_problem(n=4, nu2=0.25):
    return build_problem(k=[16], q=[4], n=n, balls=[(1.0, [1]), (nu2, ["inf"])])


def random_problem(rng: np.random.Generator, d: int, size: int, k_range=(4, 1024), q_choices=(3.0, 4.0, 5.5, 8.0)):
    """Losowy problem z punktami we wnętrzu [0, 1]^d (bez wartości brzegowych)."""
    k = [int(rng.integers(k_range[0], k_range[1] + 1)) for _ in range(d)]
    q = [float(rng.choice(q_choices)) for _ in range(d)]
    balls = []
    for _ in range(size):
        x = tuple(float(v) for v in rng.uniform(0.02, 0.98, size=d))
        nu = float(math.exp(rng.uniform(-3.0, 3.0)))
        balls.append(BallSpec(nu=nu, p=ReciprocalVector(x)))
    max_n = math.prod(k) // 2
    n = int(round(math.exp(rng.uniform(0.0, math.log(max_n)))))
    return validate(ProblemSpec(k=tuple(k), q=tuple(q), n=min(max(n, 1), max_n), balls=tuple(balls)))
