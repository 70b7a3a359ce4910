import numpy as np
import pytest

from fanoforms.bott import (GrassmannianBundle, bott, bott_cohomology, bott_line_conditions,
                            expected_line_degrees, inversions, serre_dual)
from fanoforms.weights import WeightError


def test_structure_sheaf():
    r = bott(2, 8)
    assert (r.q, r.weight, r.dim) == (0, (0,) * 8, 1)


def test_s4t_vanishes():
    assert bott(2, 8, beta=(4, 0)).vanishing


def test_top_degree():
    r = bott(2, 8, beta=(10, 10))
    assert (r.q, r.weight, r.dim) == (12, (4, 4, 2, 2, 2, 2, 2, 2), 336)


def test_middle_degree():
    r = bott(2, 8, beta=(7, 1))
    assert (r.q, r.weight, r.dim) == (6, (1,) * 8, 1)


def test_covariant_convention():
    r = bott(2, 8, beta=(-1, -1))
    assert r.q == 0 and r.dim == 28


@pytest.mark.parametrize("ab,degrees", [((0, -3), {0}), ((7, 1), {6}), ((5, 3), set())])
def test_line_condition_examples(ab, degrees):
    r = bott(2, 8, beta=ab)
    assert (set() if r.vanishing else {r.q}) == degrees == expected_line_degrees(*ab)


def test_line_sweep():
    report = bott_line_conditions(15)
    assert len(report) == 496 and all(report.values())


def test_validation():
    with pytest.raises(WeightError):
        GrassmannianBundle(8, 2, (0,) * 5, (0, 0))
    with pytest.raises(WeightError):
        GrassmannianBundle(8, 8, (), (0,) * 8)


def _random_bundle(rng):
    N = int(rng.integers(2, 9))
    m = int(rng.integers(1, N))
    a = tuple(sorted(rng.integers(-12, 13, N - m).tolist(), reverse=True))
    b = tuple(sorted(rng.integers(-12, 13, m).tolist(), reverse=True))
    return GrassmannianBundle(N, m, a, b)


def test_serre_duality_sampled():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        b = _random_bundle(rng)
        r, s = bott_cohomology(b), bott_cohomology(serre_dual(b))
        assert r.vanishing == s.vanishing
        if not r.vanishing:
            assert r.q + s.q == b.dimension
            assert r.dim == s.dim


def test_shift_invariance():
    rng = np.random.default_rng(12)
    for _ in range(300):
        b = _random_bundle(rng)
        c = int(rng.integers(-5, 6))
        sh = GrassmannianBundle(b.ambient_dim, b.sub_rank, tuple(x + c for x in b.quotient_weight),
                                tuple(x + c for x in b.sub_weight))
        r, s = bott_cohomology(b), bott_cohomology(sh)
        assert r.vanishing == s.vanishing
        if not r.vanishing:
            assert s.q == r.q and s.weight == tuple(x + c for x in r.weight)


def test_result_json():
    assert bott(2, 8, beta=(4, 0)).to_json()["status"] == "vanishing"
    j = bott(2, 8, beta=(7, 1)).to_json()
    assert j == {"status": "cohomology", "q": 6, "lambda": [1] * 8, "dim": 1}


def test_inversions():
    assert inversions((1, 2, 3)) == 3 and inversions((3, 2, 1)) == 0
