"""Shared fixtures-by-function for the test modules."""

import random

from feynmandd.sop import make_polynomial

# Variables x1, x1', x2, x3, x4, x5, x6 -> ids 0..6
SEVEN_VAR_QUADRATIC = [(0, 1), (1, 3), (2, 5), (3, 5), (3, 4), (5, 6)]


def seven_var_polynomial():
    lin = [0] * 7
    lin[1] = 1
    lin[5] = 2
    return make_polynomial(8, 7, quadratic=SEVEN_VAR_QUADRATIC, linear=lin)


def random_polynomial(rng: random.Random, n: int, modulus: int = 8, density: float = 0.3,
                      cubic: int = 0, constant: bool = True):
    quad = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    cub = []
    for _ in range(cubic):
        if n >= 3:
            cub.append(tuple(rng.sample(range(n), 3)))
    lin = [rng.randrange(modulus) for _ in range(n)]
    c = rng.randrange(modulus) if constant else 0
    return make_polynomial(modulus, n, quadratic=quad, cubic=cub, linear=lin, constant=c)
