from math import comb

import numpy as np
import pytest

from fanoforms.hodge import (CollapseResult, KoszulPage, QuarticForm, collapse_page, cotangent,
                             fermat, gr2_syml_vanishing, griffiths_beta_corank, griffiths_phi_rank,
                             hypersurface_hodge, jacobian_graded_dim, jacobian_matrix,
                             jacobian_series, dump_triples, load_triples, monomials,
                             potential_differentials, quartic_sixfold_pages, random_form, sym_dual,
                             koszul_page)
from fanoforms.schur import SchurExpr
from oracles import series_coeff, sympy_rank_mod_p


@pytest.fixture(scope="module")
def pages():
    return quartic_sixfold_pages()


def support(page):
    return set(page.grid)


def test_o_page(pages):
    p = pages["O"]
    assert support(p) == {(0, 0), (2, 6), (5, 12)}
    assert [p.dim(*e) for e in sorted(support(p))] == [1, 1, 336]
    assert [w for w, _, _ in p.grid[(5, 12)]] == [(4, 4, 2, 2, 2, 2, 2, 2)]
    c = collapse_page(p)
    assert not c.ambiguous and c.dims == {0: 1, 4: 1, 7: 336}


def test_euler_characteristic(pages):
    p = pages["O"]
    c = collapse_page(p)
    assert p.euler_characteristic() == sum((-1) ** q * d for q, d in c.dims.items()) == -334


def test_twisted_supports(pages):
    assert support(pages["S4T"]) == {(1, 6), (2, 6), (4, 12), (5, 12)}
    assert support(pages["Omega1"]) == {(0, 1), (2, 7), (5, 12)}
    assert support(pages["Omega2"]) == {(0, 2), (2, 7), (2, 8), (3, 8), (4, 12), (5, 12)}
    # the listed five entries plus a (5, 12) group in degree 7, harmless for degrees <= 4
    assert support(pages["S4T_Omega1"]) == {(1, 6), (1, 7), (2, 7), (3, 12), (4, 12), (5, 12)}
    s2 = support(pages["S2S4T"])
    assert {e for e in s2 if e[1] != 12} == {(0, 6), (1, 6), (2, 6)}


def test_named_h6_groups(pages):
    g = pages["S2S4T"].grid
    assert [w for w, _, _ in g[(0, 6)]] == [(2, 1, 1, 1, 1, 1, 1, 0)]
    assert sorted(w for w, _, _ in g[(1, 6)]) == sorted([(6, 1, 1, 1, 1, 1, 1, 0), (5, 1, 1, 1, 1, 1, 1, 1)])
    assert [w for w, _, _ in g[(2, 6)]] == [(9, 1, 1, 1, 1, 1, 1, 1)]
    # End(V) = sl(V) + C and S^4 V
    assert sorted(d for _, d, _ in pages["S4T"].grid[(1, 6)]) == [1, 63]
    assert pages["S4T"].dim(2, 6) == comb(11, 4)


def test_s4t_page_ambiguity(pages):
    c = collapse_page(pages["S4T"])
    assert c.ambiguous
    assert ((2, 6), (1, 6)) in c.pending
    assert {4, 5} <= c.ambiguous_degrees
    with pytest.raises(LookupError):
        c.h(4)
    r = c.resolve((2, 6), (1, 6), 64)
    assert r.h(4) == 266 and r.h(5) == 0


def test_omega2_low_degrees(pages):
    c = collapse_page(pages["Omega2"])
    assert [c.h(q) for q in range(5)] == [0, 0, 2, 0, 0]


def _synthetic(entries):
    p = KoszulPage(2, 8, 5)
    for (i, q), d in entries.items():
        p.grid[(i, q)] = [((0,) * 8, d, 1)]
    return p


def test_collapse_adversarial():
    # any source/target pair with total degrees n, n+1 and i' < i must be flagged
    p = _synthetic({(3, 5): 4, (1, 4): 7, (0, 0): 1})
    c = collapse_page(p)
    assert c.pending == [((3, 5), (1, 4))]
    assert c.dims == {0: 1} and c.ambiguous_degrees == {2, 3}
    # i' > i never connects
    p = _synthetic({(1, 5): 4, (3, 8): 7})
    assert not collapse_page(p).ambiguous
    # an entry touched twice stays unknown after one resolution
    p = _synthetic({(2, 6): 3, (1, 6): 5, (0, 6): 2})
    c = collapse_page(p)
    r = c.resolve((2, 6), (1, 6), 3)
    assert r.h(4) == 0 and 5 in r.ambiguous_degrees
    with pytest.raises(ValueError):
        c.resolve((0, 6), (2, 6), 1)


def test_empty_page():
    c = collapse_page(KoszulPage(2, 8, 5))
    assert not c.ambiguous and c.dims == {} and c.h(3) == 0


def test_hypersurface_hodge():
    h = hypersurface_hodge(7, 4)
    assert [h.hodge[(6 - j, j)] for j in range(4)] == [0, 1, 266, 1108]
    assert h.jacobian[0] == 1
    assert hypersurface_hodge(5, 3).hodge[(3, 1)] == 1


def test_series_against_convolution():
    for n_vars, d in [(8, 4), (6, 3), (5, 5), (4, 2)]:
        s = jacobian_series(n_vars, d)
        for k in range(n_vars * (d - 2) + 2):
            assert s[k] == series_coeff(n_vars, d, k)


def test_cubic_fourfold_graded_piece():
    f = random_form(6, 3, 10007, 3)
    assert jacobian_graded_dim(f, 3) == 20 == series_coeff(6, 3, 3)


def test_phi_degenerate_and_fermat():
    p = 10007
    x0 = QuarticForm(8, 4, {(4, 0, 0, 0, 0, 0, 0, 0): 1}, p)
    mat, _, _ = jacobian_matrix(x0, 4)
    assert griffiths_phi_rank(x0)[0] == sympy_rank_mod_p(mat, p) == 8
    fe = fermat(8, 4, p)
    mat, _, _ = jacobian_matrix(fe, 4)
    assert griffiths_phi_rank(fe)[0] == sympy_rank_mod_p(mat, p) == 64


def test_phi_random_small_prime():
    f = random_form(8, 4, 10007, 5)
    r, ker = griffiths_phi_rank(f)
    assert (r, ker) == (64, 266)


def test_jacobian_matrix_shape():
    f = random_form(8, 4, 10007, 1)
    mat, rows, cols = jacobian_matrix(f, 4)
    assert mat.shape == (330, 64) and len(monomials(8, 4)) == 330


def test_beta_corank_medium_scale():
    # the same code path at degree 6 (S^3 V (x) V* -> S^6 V); series value 784
    f = random_form(8, 4, 10007, 2)
    assert jacobian_graded_dim(f, 6) == series_coeff(8, 4, 6)


def test_form_validation():
    with pytest.raises(ValueError):
        QuarticForm(8, 4, {(1, 0, 0, 0, 0, 0, 0, 0): 1}, 101)
    with pytest.raises(ValueError):
        griffiths_phi_rank(random_form(6, 3, 101, 1))


def test_triples_roundtrip(tmp_path):
    f = random_form(8, 4, 101, 1)
    mat, _, _ = jacobian_matrix(f, 4)
    dump_triples(mat, tmp_path / "m.txt")
    assert (load_triples(tmp_path / "m.txt") == mat).all()


def test_gr2_vanishing():
    r3 = gr2_syml_vanishing(3)
    assert r3["pass"]
    assert r3["groups"][4] == [{"label": [6, 6], "q": 8, "dim": 1}]
    assert r3["groups"][0] == [{"label": [0, 0], "q": 0, "dim": 1}]
    for n in (4, 5, 6):
        assert gr2_syml_vanishing(n)["pass"]
    with pytest.raises(ValueError):
        gr2_syml_vanishing(2)


def test_koszul_page_requires_rank2_section():
    with pytest.raises(ValueError):
        koszul_page(2, 8, SchurExpr.single((3,), (1, 0, 0)))
