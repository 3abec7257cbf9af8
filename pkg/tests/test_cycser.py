import random

import pytest

from padiclog.cycser import (
    FiniteGroupRingElt, InsufficientDegree, NotInImage, PiSeries, compose,
    frobenius, gamma_act, mellin, mellin_inverse, psi, q_series, xi_series,
)
from padiclog.padic import PrimeCtx


CTX3 = PrimeCtx(3, 12)
CTX5 = PrimeCtx(5, 10)


def rand_series(ctx, cap, rng, deg=None):
    if deg is None:
        deg = cap - 1
    m = ctx.modulus
    return PiSeries(ctx, [rng.randrange(m) for _ in range(deg + 1)], deg_cap=cap)


def test_frobenius_of_pi():
    # phi(pi) = (1+pi)^p - 1
    f = frobenius(PiSeries.pi(CTX3, 30))
    expect = PiSeries.one_plus_pi_pow(CTX3, 3, 30) - PiSeries.const(CTX3, 1, 30)
    assert f == expect


def test_frobenius_of_one_plus_pi():
    f = frobenius(PiSeries.one_plus_pi_pow(CTX3, 1, 30))
    assert f == PiSeries.one_plus_pi_pow(CTX3, 3, 30)


def test_frobenius_matches_substitution_oracle():
    rng = random.Random(7)
    cap = 40
    phi_pi = PiSeries.one_plus_pi_pow(CTX3, 3, cap) - PiSeries.const(CTX3, 1, cap)
    for _ in range(10):
        f = rand_series(CTX3, cap, rng, deg=12)
        assert frobenius(f) == compose(f, phi_pi)


def test_frobenius_is_ring_map():
    rng = random.Random(8)
    cap = 36
    for _ in range(10):
        f = rand_series(CTX3, cap, rng, deg=5)
        g = rand_series(CTX3, cap, rng, deg=5)
        assert frobenius(f * g) == frobenius(f) * frobenius(g)
        assert frobenius(f + g) == frobenius(f) + frobenius(g)


def test_frobenius_q_compatibility():
    # phi(q)*phi(pi) = phi(q*pi) = phi(phi(pi))
    cap = 81
    q = q_series(CTX3, cap)
    pi = PiSeries.pi(CTX3, cap)
    lhs = frobenius(q) * frobenius(pi)
    assert lhs == frobenius(q * pi)
    assert lhs == frobenius(frobenius(pi))


def test_frobenius_needs_degree():
    with pytest.raises(InsufficientDegree):
        frobenius(PiSeries.pi(CTX3, 2))


def test_psi_inverts_phi():
    rng = random.Random(9)
    cap = 45
    for _ in range(20):
        f = rand_series(CTX3, cap, rng, deg=14)  # 3*14 < 45
        assert psi(frobenius(f)) == f
    assert psi(PiSeries.const(CTX3, 1, cap)) == PiSeries.const(CTX3, 1, cap)


def test_psi_kills_prime_to_p_powers():
    cap = 45
    for a in (1, 2, 4, 5, 7, 11):
        z = psi(PiSeries.one_plus_pi_pow(CTX3, a, cap))
        assert z.is_zero()
    for a in (3, 6, 9):
        z = psi(PiSeries.one_plus_pi_pow(CTX3, a, cap))
        assert z == PiSeries.one_plus_pi_pow(CTX3, a // 3, cap)


def test_psi_projection_formula():
    # psi(f * phi(g)) = psi(f) * g
    rng = random.Random(10)
    cap = 60
    for _ in range(10):
        f = rand_series(CTX3, cap, rng, deg=18)
        g = rand_series(CTX3, cap, rng, deg=6)
        assert psi(f * frobenius(g)) == psi(f) * g


def test_gamma_act_identity_and_composition():
    rng = random.Random(11)
    cap = 30
    for _ in range(8):
        f = rand_series(CTX3, cap, rng, deg=9)
        assert gamma_act(1, f) == f
        a = rng.randrange(1, 50)
        b = rng.randrange(1, 50)
        while a % 3 == 0:
            a += 1
        while b % 3 == 0:
            b += 1
        assert gamma_act(a, gamma_act(b, f)) == gamma_act(a * b, f)


def test_gamma_act_on_pi():
    u = 1 + 3
    cap = 30
    got = gamma_act(u, PiSeries.pi(CTX3, cap))
    expect = PiSeries.one_plus_pi_pow(CTX3, u, cap) - PiSeries.const(CTX3, 1, cap)
    assert got == expect


def test_gamma_commutes_with_frobenius():
    rng = random.Random(12)
    cap = 40
    for _ in range(6):
        f = rand_series(CTX3, cap, rng, deg=8)
        a = 2 + 3 * rng.randrange(8)
        assert gamma_act(a, frobenius(f)) == frobenius(gamma_act(a, f))


def test_onepx_basis_unipotent_roundtrip():
    from padiclog import _poly
    rng = random.Random(13)
    m = 5 ** 8
    xs = [rng.randrange(m) for _ in range(40)]
    assert _poly.from_onepx_basis(_poly.to_onepx_basis(xs, m), m) == xs
    assert _poly.to_onepx_basis(_poly.from_onepx_basis(xs, m), m) == xs


def test_xi_is_unit():
    xi = xi_series(CTX3, 27)
    assert xi.ints[0] % 3 != 0
    # xi * (q - pi^(p-1)) == p
    q = q_series(CTX3, 27, prec=xi.prec)
    m = 3 ** xi.prec
    den = list(q.ints)
    den[2] = (den[2] - 1) % m
    prod = xi * PiSeries(CTX3, den, xi.prec, 27)
    assert prod == PiSeries.const(CTX3, 3, 27, xi.prec)


def test_mellin_basics():
    lam = FiniteGroupRingElt.delta(CTX5, 1, 1)
    h = mellin(lam)
    assert h == PiSeries.one_plus_pi_pow(CTX5, 1, 25)
    lam_u = FiniteGroupRingElt.delta(CTX5, 1, 7)
    assert mellin(lam_u) == PiSeries.one_plus_pi_pow(CTX5, 7, 25)


def test_mellin_lands_in_psi_zero():
    rng = random.Random(14)
    for _ in range(10):
        coeffs = {a: rng.randrange(CTX5.modulus)
                  for a in range(1, 25) if a % 5 != 0}
        lam = FiniteGroupRingElt(CTX5, 1, coeffs)
        assert psi(mellin(lam)).is_zero()


def test_mellin_inverse_examples():
    one = mellin_inverse(PiSeries.one_plus_pi_pow(CTX5, 1, 25), 1)
    assert one == FiniteGroupRingElt.delta(CTX5, 1, 1)
    # (1+pi)^u - (1+pi) is the image of X = gamma - 1 with chi(gamma) = u
    u = 1 + 5
    h = mellin(FiniteGroupRingElt.delta(CTX5, 1, u)) - mellin(
        FiniteGroupRingElt.delta(CTX5, 1, 1))
    got = mellin_inverse(h, 1)
    expect = FiniteGroupRingElt(CTX5, 1, {u: 1, 1: -1})
    assert got == expect


def test_mellin_roundtrip_random():
    rng = random.Random(15)
    ctx = PrimeCtx(5, 10)
    for _ in range(100):
        coeffs = {a: rng.randrange(ctx.modulus)
                  for a in range(1, 125) if a % 5 != 0}
        lam = FiniteGroupRingElt(ctx, 2, coeffs)
        assert mellin_inverse(mellin(lam), 2) == lam


def test_mellin_inverse_rejects_psi_nonzero():
    with pytest.raises(NotInImage):
        mellin_inverse(PiSeries.const(CTX5, 1, 25), 1)
    with pytest.raises(InsufficientDegree):
        mellin_inverse(PiSeries.pi(CTX5, 10), 1)


def test_group_ring_multiplication():
    a = FiniteGroupRingElt.delta(CTX5, 1, 2)
    b = FiniteGroupRingElt.delta(CTX5, 1, 7)
    assert a * b == FiniteGroupRingElt.delta(CTX5, 1, 14)
    assert mellin(a * b) == mellin(FiniteGroupRingElt.delta(CTX5, 1, 14))
