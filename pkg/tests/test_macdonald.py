"""Macdonald operators, P and J polynomials, and the dual-pair checks."""

import pytest

from macdo.algebra import Frac, NotDivisible, universe
from macdo.macdonald import (QDiffOp, cauchy_check, d1_eigenvalue,
                             determinantal_agreement_check, eigen_check,
                             eigenvalue_u, expand_in_monomial_basis,
                             identity_op, integral_form_scalar,
                             is_symmetric_frac, lowering_check, macdonald_d,
                             macdonald_d1, macdonald_d_det, macdonald_j,
                             macdonald_p, monomial_symmetric, operators_agree)
from macdo.partitions import Partition, partitions_of


def test_apply_identity_and_single_shift():
    u = universe(2)
    f = u.x(1) * u.x(2)
    assert identity_op(u).apply(f).eq(Frac(f))
    t_q_x1 = QDiffOp(u, {(1, 0): Frac(u.one())})
    assert t_q_x1.apply(f).eq(Frac(u.gen("q") * f))


def test_generating_operator_on_one():
    for n in (1, 2, 3):
        uu = universe(n, u=True)
        img = macdonald_d(uu).apply(uu.one())
        assert img.eq(Frac(eigenvalue_u(uu, Partition(()))))


def test_generating_operator_coefficient_n2():
    # coefficient at K={1}: -u (1 - t x1/x2)/(1 - x1/x2), cleared form
    uu = universe(2, u=True)
    d = macdonald_d(uu)
    got = d.coeffs[(1, 0)]
    x1, x2 = uu.x(1), uu.x(2)
    expect = Frac.over(
        (x2 - uu.gen("t") * x1) * uu.mono(-1, {"u": 1}), x2 - x1)
    assert got.eq(expect)


def test_determinantal_form_matches():
    uu = universe(1, u=True)
    det = macdonald_d_det(uu)
    gen = macdonald_d(uu)
    assert operators_agree(det, gen)
    for n in (2, 3):
        assert determinantal_agreement_check(n)


def test_monomial_basis_expansion_roundtrip():
    u = universe(3)
    mu = Partition((2, 1))
    m = monomial_symmetric(u, mu)
    exp = expand_in_monomial_basis(m)
    assert set(exp) == {mu}
    assert exp[mu] == u.one()
    with pytest.raises(ValueError):
        expand_in_monomial_basis(u.x(1))  # not symmetric


def test_macdonald_p_small_values():
    u = universe(2)
    one, q, t = u.one(), u.gen("q"), u.gen("t")
    p1 = macdonald_p(Partition((1,)), 2)
    assert p1.value.eq(Frac(u.x(1) + u.x(2)))
    p11 = macdonald_p(Partition((1, 1)), 2)
    assert p11.value.eq(Frac(u.x(1) * u.x(2)))
    p2 = macdonald_p(Partition((2,)), 2)
    coeff = p2.expansion[Partition((1, 1))]
    assert coeff.eq(Frac.over((one + q) * (one - t), one - q * t))
    assert p2.expansion[Partition((2,))].eq(Frac(one))


def test_macdonald_p_needs_enough_variables():
    with pytest.raises(ValueError):
        macdonald_p(Partition((1, 1, 1)), 2)


def test_p_is_symmetric():
    for lam in [(2,), (2, 1), (3, 1)]:
        assert is_symmetric_frac(macdonald_p(Partition(lam), 2).value)
    assert is_symmetric_frac(macdonald_p(Partition((2, 1)), 3).value)


def test_p_at_q_equals_t_is_monic_and_symmetric():
    # Schur sanity: specializing q = t keeps the leading coefficient 1
    for lam in [(2,), (2, 1), (2, 2)]:
        lam = Partition(lam)
        u = universe(2)
        val = macdonald_p(lam, 2).value
        spec = Frac(val.num.convert(u, {"q": "t"}),
                    {f.convert(u, {"q": "t"}): m for f, m in val.bag})
        lead = Frac(spec.num.coeff_of(
            {"x%d" % i: e for i, e in enumerate(lam.padded(2), start=1)}), spec.bag)
        assert lead.eq(Frac(u.one()))
        assert is_symmetric_frac(spec)


def test_integral_form_scalars():
    u = universe(2)
    one, q, t = u.one(), u.gen("q"), u.gen("t")
    assert integral_form_scalar(u, Partition(())) == one
    assert integral_form_scalar(u, Partition((1,))) == one - t
    assert integral_form_scalar(u, Partition((2,))) == (one - q * t) * (one - t)


def test_macdonald_j_values():
    u = universe(2)
    one, t = u.one(), u.gen("t")
    assert macdonald_j(Partition(()), 2).as_mpoly() == one
    j1 = macdonald_j(Partition((1,)), 2)
    assert j1.as_mpoly() == (one - t) * (u.x(1) + u.x(2))
    j2 = macdonald_j(Partition((2,)), 2)
    p2 = macdonald_p(Partition((2,)), 2)
    c2 = integral_form_scalar(u, Partition((2,)))
    assert Frac(j2.as_mpoly()).eq(p2.value * c2)


def test_j_coefficients_are_integral():
    for n in (1, 2, 3):
        for d in range(5):
            for lam in partitions_of(d, max_len=n):
                sp = macdonald_j(lam, n)
                for c in sp.expansion.values():
                    p = c.as_poly()  # raises NotDivisible on failure
                    assert p.min_exp("q") >= 0 and p.min_exp("t") >= 0


def test_eigen_equation_examples():
    uu = universe(2, u=True)
    # lam = (1), n = 2: eigenvalue (1 - u q t)(1 - u)
    ev = eigenvalue_u(uu, Partition((1,)))
    one = uu.one()
    expect = (one - uu.mono(1, {"u": 1, "q": 1, "t": 1})) * \
        (one - uu.gen("u"))
    assert ev == expect
    assert eigen_check(Partition(()), 2)
    assert eigen_check(Partition((1,)), 2)
    assert eigen_check(Partition((2, 1)), 2)


def test_eigenvalue_structure():
    for n in (1, 2, 3):
        uu = universe(n, u=True)
        for lam in [Partition(()), Partition((2, 1))]:
            if lam.length() > n:
                continue
            ev = eigenvalue_u(uu, lam)
            assert ev.max_exp("u") == n
            assert ev.coeff_of({"u": 0}) == uu.one()


def test_d1_diagonal_entries():
    u = universe(2)
    d1 = macdonald_d1(u)
    img = d1.apply(monomial_symmetric(u, Partition((2,)))).as_poly()
    exp = expand_in_monomial_basis(img)
    assert exp[Partition((2,))] == d1_eigenvalue(u, Partition((2,)))


def test_cauchy_examples():
    u = universe(1, 1)
    assert cauchy_check(1, 1)
    assert cauchy_check(2, 1)
    assert cauchy_check(2, 2)


def test_lowering_examples():
    assert lowering_check(Partition((1,)), 1)
    assert lowering_check(Partition((1,)), 2)  # mu_m = 0 branch
    assert lowering_check(Partition((2, 1)), 2)
    with pytest.raises(ValueError):
        lowering_check(Partition((1, 1, 1)), 2)
