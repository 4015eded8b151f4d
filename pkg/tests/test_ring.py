"""Exact Laurent arithmetic: ring axioms, Gaussian coefficients, series ops."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flowloop import (
    Framing,
    QLaurent,
    VerificationError,
    XSeries,
    period_doubling_identity,
    qbinom,
    qtrinom,
    saddle_node_identity,
)

from conftest import ql, xs

laurents = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9).filter(bool),
    max_size=5,
).map(QLaurent)


# ---------------------------------------------------------------------------
# QLaurent basics


def test_zero_terms_are_dropped():
    assert ql({0: 1, 2: 0}).terms == {0: 1}
    assert ql({}).is_zero
    assert not QLaurent.zero()
    assert QLaurent.one().is_one


def test_coerce_accepts_ints():
    assert QLaurent.coerce(3) == ql({0: 3})
    assert QLaurent.coerce(0).is_zero
    a = ql({2: 1})
    assert QLaurent.coerce(a) is a


def test_add_mul_mixed_with_ints():
    a = ql({0: 1, 2: -1})  # 1 - q
    assert a + 1 == ql({0: 2, 2: -1})
    assert a * 2 == ql({0: 2, 2: -2})
    assert 1 - a == ql({2: 1})


def test_mul_collects_and_cancels():
    a = ql({0: 1, 2: 1})   # 1 + q
    b = ql({0: 1, 2: -1})  # 1 - q
    assert a * b == ql({0: 1, 4: -1})  # 1 - q^2


def test_pow():
    a = ql({0: 1, 2: 1})
    assert a ** 0 == QLaurent.one()
    assert a ** 3 == ql({0: 1, 2: 3, 4: 3, 6: 1})
    with pytest.raises(ValueError):
        a ** -1


def test_half_powers_render():
    a = ql({1: 1, -3: 2})
    assert a.render() == "2*q^(-3/2) + q^(1/2)"
    assert ql({0: 1, 2: -1, 4: 1}).render() == "1 - q + q^2"
    assert QLaurent.zero().render() == "0"


def test_bar_inverts_q():
    a = ql({-1: 2, 0: 1, 3: -1})
    assert a.bar() == ql({1: 2, 0: 1, -3: -1})
    assert a.bar().bar() == a


def test_shift_multiplies_by_q_power():
    a = ql({0: 1, 2: 1})
    assert a.shift(3) == ql({3: 1, 5: 1})
    assert a.shift(0) == a


def test_at_q1():
    assert ql({-2: 3, 0: -1, 5: 4}).at_q1() == 6
    assert QLaurent.zero().at_q1() == 0


def test_exact_div():
    num = ql({0: 1, 6: -1})        # 1 - q^3
    den = ql({0: 1, 2: -1})        # 1 - q
    assert num.exact_div(den) == ql({0: 1, 2: 1, 4: 1})
    with pytest.raises(VerificationError):
        ql({0: 1, 2: 1}).exact_div(den)
    with pytest.raises(VerificationError):
        num.exact_div(QLaurent.zero())


def test_min_max_half_and_unit_monomial():
    a = ql({-3: 1, 4: -2})
    assert a.min_half() == -3
    assert a.max_half() == 4
    m = ql({5: -1})
    assert m.unit_monomial() == (-1, 5)
    assert a.unit_monomial() is None


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + QLaurent.zero() == a
    assert a * QLaurent.one() == a
    assert a - a == QLaurent.zero()


@given(laurents, laurents)
def test_bar_is_multiplicative(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(laurents, laurents)
def test_exact_div_recovers_factor(a, b):
    if b.is_zero:
        return
    assert (a * b).exact_div(b) == a


# ---------------------------------------------------------------------------
# Gaussian binomials


def test_qbinom_small_table():
    assert qbinom(0, 0) == QLaurent.one()
    assert qbinom(1, 1) == QLaurent.one()
    assert qbinom(2, 1) == ql({0: 1, 2: 1})
    assert qbinom(4, 2) == ql({0: 1, 2: 1, 4: 2, 6: 1, 8: 1})
    assert qbinom(3, 5).is_zero
    assert qbinom(3, -1).is_zero


def test_qbinom_negative_top():
    # [-1; k]_q = (-1)^k q^{-k(k+1)/2}
    assert qbinom(-1, 1) == ql({-2: -1})
    assert qbinom(-1, 2) == ql({-6: 1})
    assert qbinom(-2, 1) == ql({-2: -1, -4: -1})


@given(
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=0, max_value=8),
)
def test_qbinom_specializes_to_binomial(n, k):
    assert qbinom(n, k).at_q1() == math.comb(n, k)


@given(
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=0, max_value=8),
)
def test_qbinom_pascal(n, k):
    lhs = qbinom(n, k)
    rhs = qbinom(n - 1, k - 1) + qbinom(n - 1, k).shift(2 * k)
    assert lhs == rhs


@given(
    st.integers(min_value=0, max_value=8),
    st.integers(min_value=0, max_value=8),
)
def test_qbinom_symmetry(n, k):
    if k <= n:
        assert qbinom(n, k) == qbinom(n, n - k)


def test_qtrinom_gates_and_symmetry():
    assert qtrinom(3, 1, 1, 1) == qbinom(2, 1) * qbinom(3, 1)
    assert qtrinom(3, 1, 1, 2).is_zero
    assert qtrinom(3, -1, 2, 2).is_zero
    for (k1, k2, k3) in [(1, 2, 1), (0, 2, 2), (2, 0, 1)]:
        n = k1 + k2 + k3
        assert qtrinom(n, k1, k2, k3) == qtrinom(n, k3, k2, k1)


# ---------------------------------------------------------------------------
# XSeries


def test_truncation_drops_high_terms():
    s = xs({0: {0: 1}, 8: {0: 1}}, trunc=5)
    assert s.coeff(8).is_zero
    assert s.coeff(0) == QLaurent.one()


def test_mul_respects_min_trunc():
    a = xs({0: {0: 1}, 2: {0: 1}}, trunc=9)
    b = xs({0: {0: 1}, 2: {0: 1}}, trunc=5)
    p = a * b
    assert p.trunc == 5
    assert p == xs({0: {0: 1}, 2: {0: 2}, 4: {0: 1}}, trunc=5)


def test_mul_exact_when_untruncated():
    a = xs({0: {0: 1}, 2: {2: -1}})  # 1 - q x
    assert a.trunc is None
    sq = a * a
    assert sq == xs({0: {0: 1}, 2: {2: -2}, 4: {4: 1}})


def test_mul_term_matches_full_multiply():
    s = xs({0: {0: 1}, 2: {1: 2}, 4: {-2: 1}}, trunc=7)
    mono = XSeries.monomial(QLaurent(dict([(3, 5)])), 2, trunc=7)
    assert s.mul_term(ql({3: 5}), 2) == s * mono
    assert s.mul_term(QLaurent.zero(), 2).is_zero


def test_scale_monomial():
    s = xs({0: {0: 1}, 2: {0: 1}}, trunc=5)
    assert s.scale_monomial(-1, 2, 2) == xs({2: {2: -1}, 4: {2: -1}}, trunc=5)


def test_inverse_is_two_sided_to_trunc():
    s = xs({0: {0: 1}, 2: {2: -1}, 4: {0: 3}}, trunc=None)
    inv = s.inverse(11)
    assert (s.truncate(11) * inv) == XSeries.one(11)
    with pytest.raises(VerificationError):
        xs({2: {0: 1}}).inverse(5)  # no constant term


def test_substitute_x_inverse_exact_only():
    s = xs({-2: {0: 1}, 2: {2: 3}})
    assert s.substitute_x_inverse() == xs({2: {0: 1}, -2: {2: 3}})
    with pytest.raises(VerificationError):
        xs({0: {0: 1}}, trunc=3).substitute_x_inverse()


def test_bar_q_only_touches_q():
    s = xs({2: {1: 1, -3: 2}})
    assert s.bar_q() == xs({2: {-1: 1, 3: 2}})


def test_subst_x_qpow():
    # x -> q^k sends x^{xh/2} to q^{k xh/2}
    s = xs({2: {0: 1}, 4: {2: -1}})
    assert s.subst_x_qpow(2) == ql({4: 1, 10: -1})
    # at k=-1 the two terms land on the same power and cancel
    assert s.subst_x_qpow(-1).is_zero


def test_specialize_q1():
    s = xs({0: {0: 1}, 2: {-1: 1, 1: 1}}, trunc=5)
    out = s.specialize_q1()
    assert out == xs({0: {0: 1}, 2: {0: 2}}, trunc=5)


def test_render_with_tail():
    s = xs({0: {0: 1}, 2: {2: -1}}, trunc=3)
    assert s.render(tail=True) == "1 - q*x + O(x^2)"
    assert s.render() == "1 - q*x"
    exact = xs({1: {0: 1}})
    assert exact.render(tail=True) == "x^(1/2)"


def test_equality_ignores_trunc_marker_only_terms():
    assert xs({0: {0: 1}}, trunc=5) == xs({0: {0: 1}}, trunc=5)
    assert xs({0: {0: 1}}, trunc=5) != xs({0: {0: 2}}, trunc=5)


# ---------------------------------------------------------------------------
# Bifurcation identities

FRAMINGS = [Framing(h) for h in (-2, -1, 0, 1, 2, 4)]


@pytest.mark.parametrize("f", FRAMINGS, ids=lambda f: f.render())
def test_saddle_node_collapses_to_one(f):
    assert saddle_node_identity(f, 8) == XSeries.one(17)


@pytest.mark.parametrize("f", FRAMINGS, ids=lambda f: f.render())
def test_period_doubling_sides_agree(f):
    lhs, rhs = period_doubling_identity(f, 8)
    assert lhs == rhs


def test_framing_render():
    assert Framing(1).render() == "1/2"
    assert Framing(4).render() == "2"
    assert Framing(-1).render() == "-1/2"
