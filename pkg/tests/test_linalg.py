from fractions import Fraction

import numpy as np
import pytest

from fanoforms.linalg import (det_mod_p, det_q, is_prime, nullspace_mod_p, nullspace_q,
                              random_prime, rank_mod_p, rank_q)
from oracles import sympy_det, sympy_rank_mod_p, sympy_rank_q


def planted(rng, m, n, r, p):
    return (rng.integers(0, p, (m, r)) @ rng.integers(0, p, (r, n))) % p


@pytest.mark.parametrize("shape,r", [((5, 7), 3), ((40, 30), 17), ((130, 260), 101), ((200, 150), 120)])
@pytest.mark.parametrize("p", [101, 65521])
def test_rank_mod_p_against_sympy(shape, r, p):
    rng = np.random.default_rng(shape[0] * r + p)
    a = planted(rng, *shape, r, p)
    assert rank_mod_p(a, p) == sympy_rank_mod_p(a, p)


def test_rank_mod_p_structured():
    # duplicated and zero columns, rank deficient panels
    rng = np.random.default_rng(3)
    a = rng.integers(0, 97, (250, 120))
    a[:, 60:] = a[:, :60]
    a[:, 10:20] = 0
    assert rank_mod_p(a, 97) == sympy_rank_mod_p(a, 97)


def test_rank_large_prime_fallback():
    a = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank_mod_p(a, 1_000_003) == 2


def test_rank_q_and_nullspace():
    rng = np.random.default_rng(4)
    for _ in range(30):
        m, n = rng.integers(1, 7, 2)
        a = [[Fraction(int(x), int(rng.integers(1, 4))) for x in row]
             for row in (rng.integers(-3, 4, (m, 2)) @ rng.integers(-3, 4, (2, n)))]
        assert rank_q(a) == sympy_rank_q(a)
        ker = nullspace_q(a)
        assert len(ker) == n - rank_q(a)
        for v in ker:
            assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


def test_nullspace_mod_p():
    p = 101
    a = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 1]]
    for v in nullspace_mod_p(a, p):
        assert all(sum(x * y for x, y in zip(row, v)) % p == 0 for row in a)
    assert len(nullspace_mod_p(a, p)) == 2


def test_determinants():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a = rng.integers(-4, 5, (5, 5)).tolist()
        assert det_q(a) == sympy_det(a)
        assert det_mod_p(a, 101) == int(sympy_det(a)) % 101


def test_random_prime():
    p = random_prime(1729)
    assert 10**4 < p < 10**5 and is_prime(p)
    assert random_prime(1729) == p
