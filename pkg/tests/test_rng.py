"""Counter generator: determinism, frozen values, scalar/vector agreement."""

import numpy as np
import pytest

from graphlimitlab.rng import (
    CounterStream,
    SampleSeed,
    SequentialDraws,
    mix64,
    raw_array,
    raw_with_keys,
    stream_keys_array,
)


def test_frozen_outputs():
    # golden values pin the generator design across refactors and ports
    s = CounterStream(SampleSeed(0, 0))
    assert [s.raw(i) for i in range(3)] == [
        0x568A9B0B1A2C05EC, 0x44E5B8B147EF718B, 0x458563AB55521133,
    ]
    s = CounterStream(SampleSeed(123456789, 42))
    assert s.raw(0) == 0x1A42B7555C1DA0AC
    assert mix64(1) == 0x5692161D100B05E5


def test_random_access_matches_sequential():
    stream = CounterStream(SampleSeed(7, 3))
    draws = SequentialDraws(SampleSeed(7, 3))
    values = [draws.next_raw() for _ in range(10)]
    assert values == [stream.raw(i) for i in range(10)]
    assert stream.raw(5) == values[5]  # out-of-order reads are free


def test_uniform_range_and_determinism():
    a = CounterStream(SampleSeed(11, 0))
    b = CounterStream(SampleSeed(11, 0))
    for i in range(200):
        u = a.uniform(i)
        assert 0.0 <= u < 1.0
        assert u == b.uniform(i)


def test_streams_differ():
    a = CounterStream(SampleSeed(5, 0))
    b = CounterStream(SampleSeed(5, 1))
    assert [a.raw(i) for i in range(4)] != [b.raw(i) for i in range(4)]


def test_numpy_path_bit_identical():
    seed = 987654321
    streams = np.arange(17, dtype=np.uint64)
    keys = stream_keys_array(seed, streams)
    for counter in (0, 1, 63, 1000):
        vector = raw_with_keys(keys, counter)
        direct = raw_array(seed, streams, counter)
        assert np.array_equal(vector, direct)
        for stream in (0, 7, 16):
            scalar = CounterStream(SampleSeed(seed, stream)).raw(counter)
            assert int(vector[stream]) == scalar


def test_next_below_uniform_and_exact():
    draws = SequentialDraws(SampleSeed(13, 2))
    counts = [0] * 7
    for _ in range(7000):
        counts[draws.next_below(7)] += 1
    assert min(counts) > 800 and max(counts) < 1200
    with pytest.raises(ValueError):
        draws.next_below(0)


def test_seed_validation():
    with pytest.raises(ValueError):
        SampleSeed(-1, 0)
    with pytest.raises(ValueError):
        SampleSeed(0, -2)
