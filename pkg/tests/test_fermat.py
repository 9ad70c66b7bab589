import math
import random

import pytest

from factorlab import ntheory
from factorlab.fermat import (
    DegenerateDenominator,
    Exhausted,
    FermatReport,
    compute_initial_u,
    fermat_factor,
    shifted_fermat,
)


def expected_steps(N, p, q):
    # independent count: u values from ceil(sqrt(N)) to (p+q)/2 inclusive
    return (p + q) // 2 - (math.isqrt(N - 1) + 1) + 1


def test_fermat_examples():
    assert fermat_factor(35, 10) == FermatReport(5, 7, 1, 6)
    assert fermat_factor(5959, 10) == FermatReport(59, 101, 3, 78)
    assert fermat_factor(9, 1) == FermatReport(3, 3, 1, 3)


def test_fermat_rejects_even_and_small():
    with pytest.raises(ValueError):
        fermat_factor(4)
    with pytest.raises(ValueError):
        fermat_factor(1)


def test_fermat_exhausts():
    # 3 * 101: needs (3+101)/2 - 18 + 1 = 35 steps
    with pytest.raises(Exhausted) as err:
        fermat_factor(303, 10)
    assert err.value.steps == 10
    rep = fermat_factor(303, 35)
    assert (rep.p, rep.q) == (3, 101)
    assert rep.steps == expected_steps(303, 3, 101) == 35


def test_fermat_prime_input_yields_unit_factor():
    rep = fermat_factor(7, 100)
    assert (rep.p, rep.q) == (1, 7)
    assert rep.p * rep.q == 7


def test_fermat_identity_and_step_oracle_sampled():
    rng = random.Random(5)
    for _ in range(100):
        p = ntheory.next_prime(rng.randrange(3, 1000))
        q = ntheory.next_prime(rng.randrange(p, 3000))
        N = p * q
        rep = fermat_factor(N, 1 << 22)
        assert rep.p * rep.q == N
        assert rep.p <= rep.q
        U, V = rep.p + rep.q, rep.q - rep.p
        assert U * U - V * V == 4 * N
        assert rep.steps == expected_steps(N, rep.p, rep.q)


def test_fermat_big_int_fallback_path():
    # u starts beyond the int64 window: exercise the big-int loop
    p = ntheory.next_prime((1 << 33) + 11)
    q = ntheory.next_prime(p + 2)
    N = p * q
    rep = fermat_factor(N, 1 << 16)
    assert (rep.p, rep.q) == (min(p, q), max(p, q))


def test_fermat_crosses_vector_window_boundary():
    # the search starts inside the int64 window and the hit lies past 2**31,
    # so the scan must hand over mid-search without losing count
    m = 1 << 31
    p = ntheory.next_prime(m - 16_000_000)
    q = ntheory.next_prime(m + 16_000_000)
    N = p * q
    u0 = math.isqrt(N - 1) + 1
    assert u0 < m < (p + q) // 2
    rep = fermat_factor(N, 1 << 20)
    assert (rep.p, rep.q) == (p, q)
    assert rep.steps == expected_steps(N, p, q)


def test_twin_prime_products_single_step():
    count = 0
    p = 3
    while count < 25:
        if ntheory.is_prime(p) and ntheory.is_prime(p + 2):
            rep = fermat_factor(p * (p + 2), 2)
            assert rep.steps == 1
            assert (rep.p, rep.q) == (p, p + 2)
            count += 1
        p += 2


def test_compute_initial_u_zero_offset():
    for N in (35, 11639, 999985999949):
        assert compute_initial_u(N, 0) == 2 * math.isqrt(N)
    assert compute_initial_u(999985999949, 0) == 1999984


def test_compute_initial_u_is_even():
    rng = random.Random(2)
    for _ in range(200):
        N = rng.randrange(16, 1 << 40) | 1
        x = rng.randrange(-8, 9)
        f = ntheory.iroot(N, 4)
        if f + x <= 0:
            continue
        assert compute_initial_u(N, x) % 2 == 0


def test_compute_initial_u_degenerate():
    with pytest.raises(DegenerateDenominator):
        compute_initial_u(10**12, -1000)
    with pytest.raises(ValueError):
        compute_initial_u(15, 0)


def build_offset_instance(rng, x, x0_target):
    """Construct N = p*q with p = isqrt(N) + iroot(N,4)*x + x0, |x0| <= 64.

    Fixed-point iteration pins the center, then nearby primes are tried and
    the first whose exactly-implied offset stays within budget wins.
    """
    q = ntheory.next_prime(rng.randrange(1 << 19, 1 << 20))
    p = q
    for _ in range(8):
        N = p * q
        p_new = math.isqrt(N) + ntheory.iroot(N, 4) * x + x0_target
        if p_new == p:
            break
        p = p_new
    if p <= 2:
        return None
    for delta in sorted(range(-96, 97), key=abs):
        cand = p + delta
        if cand <= 2 or not ntheory.is_prime(cand):
            continue
        N = cand * q
        x0 = cand - math.isqrt(N) - ntheory.iroot(N, 4) * x
        if abs(x0) <= 64:
            assert math.isqrt(N) + ntheory.iroot(N, 4) * x + x0 == cand
            return N, cand, q, x0
    return None


def test_compute_initial_u_tracks_true_sum():
    rng = random.Random(9)
    built = 0
    for _ in range(60):
        x = rng.randrange(-8, 9)
        inst = build_offset_instance(rng, x, rng.randrange(-48, 49))
        if inst is None:
            continue
        N, p, q, x0 = inst
        built += 1
        u0 = compute_initial_u(N, x)
        slack = x0 * x0 // p + abs(x) + 6
        assert abs((p + q) - u0) <= slack, (N, p, q, x0, u0)
    assert built >= 30


def test_shifted_fermat_examples():
    rep = shifted_fermat(999985999949, 0, 10)
    assert (rep.p, rep.q) == (999983, 1000003)
    assert rep.steps <= 3
    rep35 = shifted_fermat(35, 0, 5)
    assert (rep35.p, rep35.q) == (5, 7)


def test_shifted_fermat_constructed_instances_cycle_bound():
    rng = random.Random(13)
    built = 0
    for _ in range(80):
        x = rng.randrange(-16, 17)
        inst = build_offset_instance(rng, x, rng.randrange(-64, 65))
        if inst is None:
            continue
        N, p, q, x0 = inst
        built += 1
        rep = shifted_fermat(N, x, 1 << 16)
        assert rep.p * rep.q == N
        assert rep.steps <= 4 * x0 * x0 // p + 8
    assert built >= 40


def test_shifted_fermat_exhausts():
    with pytest.raises(Exhausted):
        # x far off for a balanced instance: cap must trip
        shifted_fermat(1097395555379, 5000, 4)
