import itertools
import random

import numpy as np
import pytest

from betalac import _purekernels, kernels


def brute_pair(a, b, horizon):
    return sorted({x + y for x in a for y in b if x + y < horizon})


def brute_fold(elements, k, horizon):
    if k == 0:
        return [0]
    return sorted(
        {
            sum(combo)
            for combo in itertools.combinations_with_replacement(elements, k)
            if sum(combo) < horizon
        }
    )


def test_backend_reports_name():
    assert kernels.backend() in ("cython", "python")


def test_pure_pack_unpack_round_trip():
    rng = random.Random(11)
    for _ in range(20):
        horizon = rng.randint(1, 500)
        elems = sorted(rng.sample(range(horizon), rng.randint(0, min(horizon, 30))))
        bits = _purekernels.pack(np.array(elems, dtype=np.int64), horizon)
        assert _purekernels.unpack(bits, horizon).tolist() == elems


def test_minkowski_pair_matches_brute_force():
    rng = random.Random(5)
    for _ in range(40):
        horizon = rng.randint(30, 2000)
        a = sorted(rng.sample(range(horizon), rng.randint(1, 25)))
        b = sorted(rng.sample(range(horizon), rng.randint(1, 25)))
        got = kernels.minkowski_pair(np.array(a), np.array(b), horizon).tolist()
        assert got == brute_pair(a, b, horizon)


def test_minkowski_fold_matches_brute_force():
    rng = random.Random(6)
    for _ in range(40):
        horizon = rng.randint(10, 250)
        elems = sorted(rng.sample(range(horizon), rng.randint(1, 10)))
        k = rng.randint(0, 4)
        got = kernels.minkowski_fold(np.array(elems), k, horizon).tolist()
        assert got == brute_fold(elems, k, horizon)


def test_fold_rejects_negative_k():
    with pytest.raises(ValueError):
        kernels.minkowski_fold(np.array([0, 1]), -1, 10)


def test_convolution_matches_brute_force():
    rng = random.Random(7)
    for _ in range(40):
        horizon = rng.randint(1, 120)
        a = [rng.randint(0, 6) for _ in range(rng.randint(1, 80))]
        b = [rng.randint(0, 6) for _ in range(rng.randint(1, 80))]
        want = [0] * horizon
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                if i + j < horizon:
                    want[i + j] += ai * bj
        assert kernels.convolve_counts(a, b, horizon) == want
        assert _purekernels.convolve_counts(a, b, horizon) == want


def test_convolution_big_values_fall_back_exactly():
    big = [2**40, 3**26]
    out = kernels.convolve_counts(big, big, 3)
    assert out == [2**80, 2 * 2**40 * 3**26, 3**52]


def test_word_boundary_shifts():
    # shifts crossing 64-bit word boundaries are the fiddly case
    horizon = 300
    a = list(range(0, 130, 7))
    for shift in (0, 1, 63, 64, 65, 127, 128, 200):
        got = kernels.minkowski_pair(np.array(a), np.array([shift]), horizon).tolist()
        assert got == [x + shift for x in a if x + shift < horizon]


def test_backends_agree_bit_for_bit():
    try:
        from betalac import _fastkernels
    except ImportError:
        pytest.skip("compiled extension not built")
    rng = random.Random(97)
    for _ in range(25):
        horizon = rng.randint(64, 5000)
        elems = sorted(rng.sample(range(horizon), rng.randint(1, min(40, horizon))))
        k = rng.randint(0, 3)
        arr = np.array(elems, dtype=np.int64)
        saved = kernels._impl
        try:
            kernels._impl = _fastkernels
            fast = kernels.minkowski_fold(arr, k, horizon).tolist()
            kernels._impl = _purekernels
            pure = kernels.minkowski_fold(arr, k, horizon).tolist()
        finally:
            kernels._impl = saved
        assert fast == pure
