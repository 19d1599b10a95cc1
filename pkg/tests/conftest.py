import random

import pytest

from nilqp import ExactMatrix
from nilqp.scalars import Q0, Q1, Rational

_COEFFS = (
    Rational(1),
    Rational(-1),
    Rational(2),
    Rational(-2),
    Rational(1, 2),
    Rational(-1, 2),
)


def random_invertible_t(n: int, rng: random.Random) -> ExactMatrix:
    """Product of 2n elementary row operations: invertible, small entries."""
    m = [[Q1 if i == j else Q0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = _COEFFS[rng.randrange(len(_COEFFS))]
        for t in range(n):
            m[i][t] = m[i][t] + c * m[j][t]
    return ExactMatrix(m, cols=n)


@pytest.fixture
def rng():
    return random.Random(20240611)
