"""Randomised algebraic identities for the truncated series engine."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from carlitz.series import MultiSeries, Rational

VARS = ("t", "y", "q")
TOTAL = 6
CAPS = {"q": 2}

EXPONENTS = [(i, j, k) for i in range(TOTAL + 1) for j in range(TOTAL // 2 + 1) for k in range(3)
             if i + 2 * j <= TOTAL]
NONCONST = [e for e in EXPONENTS if e != (0, 0, 0)]

coef = st.builds(Rational, st.integers(-5, 5), st.integers(1, 4))
PROFILE = settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def make(terms, const=None):
    terms = dict(terms)
    if const is not None:
        terms[(0, 0, 0)] = Rational(const)
    return MultiSeries(VARS, terms, caps=CAPS, total=TOTAL)


series = st.dictionaries(st.sampled_from(EXPONENTS), coef, max_size=8).map(make)
tails = st.dictionaries(st.sampled_from(NONCONST), coef, max_size=8)
units = st.builds(make, tails, st.sampled_from([1, -2, 3, Rational(1, 2)]))
squares = st.builds(make, tails, st.sampled_from([1, 4, 9, Rational(9, 4)]))


@PROFILE
@given(squares)
def test_sqrt_squared(s):
    r = s.sqrt()
    assert r.constant_term() > 0
    assert r * r == s


@PROFILE
@given(units)
def test_inverse(s):
    assert s * s.invert() == MultiSeries.constant(1, VARS, caps=CAPS, total=TOTAL)


@PROFILE
@given(series, series, st.sampled_from(VARS))
def test_product_rule(a, b, var):
    assert (a * b).derive(var) == a.derive(var) * b + a * b.derive(var)


@PROFILE
@given(st.dictionaries(st.integers(1, 4), coef, max_size=4), st.sampled_from([1, 4, Rational(1, 4)]))
def test_parity_of_t(terms, const):
    # built from x = t^2 only; products, inverses and roots stay even in t
    xs = MultiSeries(("x",), {(k,): c for k, c in terms.items()} | {(0,): Rational(const)}, total=12)
    s = xs.to_t()
    for result in (s * s, s.invert(), s.sqrt(), s.sqrt().invert() * s):
        assert all(result.coefficient((k,)) == 0 for k in range(1, 13, 2))


@PROFILE
@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
