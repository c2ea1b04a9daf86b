import io
from fractions import Fraction as F

import pytest

import oracles
from selfsim_sl.inertia import index_of
from selfsim_sl.pencil import TridiagonalSymmetric, assemble, pencil_parts
from selfsim_sl.selfsim import CANTOR, INDEFINITE, LEBESGUE, iterate, moments, validate

SETS = {"lebesgue": LEBESGUE, "cantor": CANTOR, "indefinite": INDEFINITE}


def test_lebesgue_one_by_one():
    lam = F(7, 5)
    t = assemble(LEBESGUE, moments(LEBESGUE), lam)
    assert t.diag == (4 - lam / 3,)
    assert t.offdiag == ()


def test_lebesgue_level_two():
    lam = F(3)
    t = assemble(iterate(LEBESGUE, 2), moments(LEBESGUE), lam)
    assert t.diag == (8 - lam / 6,) * 3
    assert t.offdiag == (-4 - lam / 24,) * 2


@pytest.mark.parametrize("m", range(1, 7))
@pytest.mark.parametrize("lam", [F(0), F(1), F(17, 3), F(-5, 2)])
def test_lebesgue_matches_uniform_fem(m, lam):
    t = assemble(iterate(LEBESGUE, m), moments(LEBESGUE), lam)
    diag, off = oracles.uniform_k_minus_lam_m(2**m, lam)
    assert list(t.diag) == diag
    assert list(t.offdiag) == off


@pytest.mark.parametrize("name", SETS)
def test_zero_lambda_is_dirichlet_stiffness(name):
    s = iterate(SETS[name], 2)
    t = assemble(s, moments(s), 0)
    a = s.a
    assert t.diag == tuple(1 / a[k] + 1 / a[k + 1] for k in range(s.n_pieces - 1))
    assert t.offdiag == tuple(-1 / a[k + 1] for k in range(s.n_pieces - 2))
    assert index_of(t) == 0


def test_nonuniform_stiffness_positive_definite():
    s = validate(["1/6", "1/2", "1/3"], ["1/4", "-1/2", "1/3"], ["1", "0", "-1/2"])
    t = assemble(iterate(s, 3), moments(s), 0)
    assert index_of(t) == 0


@pytest.mark.parametrize("name", SETS)
def test_affine_in_lambda(name):
    s = iterate(SETS[name], 2)
    mom = moments(s)
    eps = F(1, 7)
    t0, t1, t2 = (assemble(s, mom, lam, eps) for lam in (0, 1, F(9, 2)))
    for x0, x1, x2 in zip(t0.diag + t0.offdiag, t1.diag + t1.offdiag, t2.diag + t2.offdiag):
        assert x2 == x0 + F(9, 2) * (x1 - x0)


@pytest.mark.parametrize("name", SETS)
def test_eps_only_scales_stiffness(name):
    s = iterate(SETS[name], 2)
    mom = moments(s)
    lam, eps = F(13, 3), F(2, 9)
    k = assemble(s, mom, 0)
    plain = assemble(s, mom, lam)
    shifted = assemble(s, mom, lam, eps)
    for kx, px, sx in zip(k.diag + k.offdiag, plain.diag + plain.offdiag, shifted.diag + shifted.offdiag):
        assert sx == px - eps * kx


@pytest.mark.parametrize("name", ["cantor", "indefinite"])
def test_entries_match_quadrature(name):
    """Closed-form entries against direct quadrature of the quadratic form."""
    s = SETS[name]
    for level in (1, 2):
        t_set = iterate(s, level)
        lam = F(1)
        t = assemble(t_set, moments(s), lam)
        for k in range(1, t_set.n_pieces):
            want = oracles.stiffness_form(t_set, k, k) + oracles.weight_form_by_quadrature(s, t_set.alpha, k, k)
            assert float(t.diag[k - 1]) == pytest.approx(want, abs=1e-6)
            if k > 1:
                want = oracles.stiffness_form(t_set, k, k - 1) + oracles.weight_form_by_quadrature(s, t_set.alpha, k, k - 1)
                assert float(t.offdiag[k - 2]) == pytest.approx(want, abs=1e-6)


def test_quadrature_oracle_on_nonuniform_set():
    s = validate(["1/6", "1/2", "1/3"], ["1/4", "-1/2", "1/3"], ["1", "0", "-1/2"])
    t = assemble(s, moments(s), 1)
    for k in (1, 2):
        want = oracles.stiffness_form(s, k, k) + oracles.weight_form_by_quadrature(s, s.alpha, k, k, iterations=9)
        assert float(t.diag[k - 1]) == pytest.approx(want, abs=1e-6)
    want = oracles.stiffness_form(s, 2, 1) + oracles.weight_form_by_quadrature(s, s.alpha, 2, 1, iterations=9)
    assert float(t.offdiag[0]) == pytest.approx(want, abs=1e-6)


@pytest.mark.parametrize("name", SETS)
def test_integer_matrix_is_positive_multiple(name):
    s = iterate(SETS[name], 3)
    mom = moments(s)
    lam, eps = F(41, 6), F(1, 11)
    t = assemble(s, mom, lam, eps)
    diag, off = pencil_parts(s, mom).integer_matrix(lam, eps)
    scale = F(diag[0]) / t.diag[0]
    assert scale > 0
    assert [F(x) for x in diag] == [scale * x for x in t.diag]
    assert [F(x) for x in off] == [scale * x for x in t.offdiag]


def test_negative_eps_rejected():
    with pytest.raises(ValueError):
        assemble(LEBESGUE, moments(LEBESGUE), 1, F(-1, 2))


def test_tridiagonal_shape_checks():
    with pytest.raises(ValueError):
        TridiagonalSymmetric((F(1), F(2)), ())
    with pytest.raises(ValueError):
        TridiagonalSymmetric((), ())


def test_csv_dump():
    buf = io.StringIO()
    assemble(iterate(LEBESGUE, 2), moments(LEBESGUE), 0).write_csv(buf)
    assert buf.getvalue().splitlines() == ["i,diag,offdiag", "0,8,-4", "1,8,-4", "2,8,"]
