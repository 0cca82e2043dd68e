"""Continued fractions, log-space magnitudes and irrationality measures."""

import math
from fractions import Fraction

import pytest

from staircase.diophantine import (
    ApproximationSample,
    ContinuedFraction,
    LogMagnitude,
    Thresholds,
    best_approx_check,
    cf_expand,
    classify,
    convergents,
    dist_to_integers,
    e_cf,
    lookup_preset,
    mu_estimate,
    mu_from_samples,
    nat_ln_interval,
    presets,
    targeted_theta_cf,
    theta_estimate,
    theta_from_samples,
)
from staircase.errors import PreconditionError


def test_cf_expand_rational():
    assert cf_expand(Fraction(17, 12), 10) == [1, 2, 2, 2]
    assert cf_expand(Fraction(2, 5), 10) == [0, 2, 2]
    assert cf_expand(Fraction(3), 10) == [3]


def test_convergents_golden_are_fibonacci():
    cf = ContinuedFraction.constant(0, 1)
    table = convergents(cf, 10)
    fib = [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    assert [c.q for c in table] == fib[1:] + [89]
    # consecutive convergents satisfy the determinant identity
    for a, b in zip(table, table[1:]):
        assert b.p * a.q - a.p * b.q in (-1, 1)


def test_convergents_switch_to_log_space():
    def gen():
        yield 10 ** 20
        while True:
            yield 10 ** 20
    cf = ContinuedFraction(0, gen)
    table = convergents(cf, 40, bit_budget=1000)
    exact = [c for c in table if isinstance(c.q, int)]
    logged = [c for c in table if isinstance(c.q, LogMagnitude)]
    assert exact and logged
    lo, hi = nat_ln_interval(logged[0].q)
    assert 0 < lo <= hi
    # certified: ln q grows by about ln(10^20) per step
    lo2, hi2 = nat_ln_interval(logged[1].q)
    assert lo2 - hi > 0.9 * 20 * math.log(10)


def test_exact_convergent_and_floors():
    cf = ContinuedFraction.constant(0, 2)  # sqrt(2) - 1
    p, q = cf.exact_convergent(6)
    assert Fraction(p, q) == Fraction(70, 169)
    floors = cf.floors_upto(20)
    import math as m
    for k in range(1, 21):
        assert floors[k] == m.floor(k * (m.sqrt(2) - 1))


def test_value_enclosure_brackets_true_value():
    cf = ContinuedFraction.constant(0, 1)
    e = cf.value_enclosure(12)
    phi_inv = (math.sqrt(5) - 1) / 2
    assert float(e.lo) < phi_inv < float(e.hi)


def test_dist_to_integers():
    d = dist_to_integers(Fraction(7, 3))
    assert d.lo == d.hi == Fraction(1, 3)
    assert dist_to_integers(Fraction(5)).lo == 0


def test_log_magnitude_arithmetic():
    a = LogMagnitude.from_int(1000)
    lo, hi = a.ln_interval()
    assert lo <= math.log(1000.0) <= hi
    b = a.mul(a)
    lo2, hi2 = b.ln_interval()
    assert abs(lo2 - 2 * math.log(1000.0)) < 1e-9
    assert LogMagnitude.saturate().saturated
    v_lo, v_hi = a.value_interval()
    assert v_lo <= 1000.0 <= v_hi


def test_mu_estimate_e_is_small():
    est = mu_estimate(e_cf(), 30)
    # e has irrationality exponent 2; finite-N running values hover above 2
    n, lo, hi = est.running[-1]
    assert 2.0 < hi < 2.5
    assert est.caveat


def test_theta_estimate_golden_tends_to_zero_log():
    est = theta_estimate(ContinuedFraction.constant(0, 1), 20)
    vals = [hi for _, _, hi in est.running]
    assert vals[-1] < 2e-3  # log theta -> 0: not Liouville at all
    assert vals[-1] < vals[0]
    assert est.caveat


def test_theta_from_samples_prefers_certified_ratio():
    s = ApproximationSample("s1", 10, LogMagnitude(20.0, 20.1),
                            ratio_bounds=(2.0, 2.01))
    est = theta_from_samples([s])
    assert est.headline == (2.0, 2.01)


def test_mu_from_samples_monotone_headline():
    samples = [
        ApproximationSample("a", 10, LogMagnitude(5.0, 5.0)),
        ApproximationSample("b", 100, LogMagnitude(20.0, 20.0)),
    ]
    est = mu_from_samples(samples)
    assert est.headline[0] <= est.headline[1]
    assert est.headline[1] >= 1.0


def test_best_approx_check_golden_convergent():
    cf = ContinuedFraction.constant(0, 1)
    enc = cf.value_enclosure(25)
    res = best_approx_check(enc, 8, 13, refine=lambda: cf.value_enclosure(40))
    assert res["first_kind"] and res["second_kind"]
    res = best_approx_check(enc, 7, 12)
    assert not res["second_kind"]


def test_best_approx_check_rational_target():
    res = best_approx_check(Fraction(5, 8), 2, 3)
    assert res["second_kind"]


def test_targeted_theta_cf_hits_log_beta():
    for beta in (2, 3, 10):
        cf = targeted_theta_cf(Fraction(beta))
        est = theta_estimate(cf, 7)
        _, lo, hi = est.running[-1]
        assert abs(lo - math.log(beta)) < 1e-3
        assert abs(hi - math.log(beta)) < 1e-3


def test_presets_and_lookup():
    table = presets()
    for name in ("alpha1", "alpha2", "alpha3", "alpha4", "alpha5",
                 "alpha6", "alpha7", "golden", "sqrt2m1", "e"):
        assert name in table
    p = lookup_preset("targeted:2")
    assert p.cf is not None
    with pytest.raises(PreconditionError):
        lookup_preset("nope")


def test_classification_structure():
    c = classify(lookup_preset("golden"), N=8)
    assert c.caveat and c.theta is not None
    assert c.label in ("hypo-exponential", "exponential",
                       "hyper-exponential", "apparently-non-Liouville")


def test_classify_custom_thresholds():
    # a huge low threshold forces everything out of the exponential band
    t = Thresholds(theta_low=1e9, theta_high=1e12)
    c = classify(lookup_preset("targeted:2"), N=6, thresholds=t)
    assert c.label in ("hypo-exponential", "apparently-non-Liouville")
