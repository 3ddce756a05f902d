import math

import numpy as np
import pytest

from boundarylab.errors import InvalidZeroError, ValidationError
from boundarylab.unitdisc import (
    TWO_PI,
    ClosedSetSpec,
    ZeroSequence,
    blaschke_condition_sum,
    circular_gap,
    gen_accumulation_sequence,
    gen_radial_sequence,
    normalize_angle,
)


def test_normalize_angle():
    assert normalize_angle(0.0) == 0.0
    assert normalize_angle(TWO_PI) == 0.0
    assert abs(normalize_angle(-0.5) - (TWO_PI - 0.5)) < 1e-15
    assert abs(normalize_angle(7.0) - (7.0 - TWO_PI)) < 1e-15
    for t in np.linspace(-20.0, 20.0, 101):
        n = normalize_angle(float(t))
        assert 0.0 <= n < TWO_PI


def test_circular_gap():
    assert circular_gap(0.1, 0.1) == 0.0
    assert abs(circular_gap(0.0, math.pi) - math.pi) < 1e-15
    # wraps the short way around
    assert abs(circular_gap(0.1, TWO_PI - 0.1) - 0.2) < 1e-12
    rng = np.random.default_rng(4)
    for _ in range(50):
        a, b = rng.uniform(0.0, TWO_PI, size=2)
        assert circular_gap(a, b) == circular_gap(b, a)
        assert circular_gap(a, b) <= math.pi + 1e-15


def test_zero_sequence_from_zeros_round_trip():
    zs = [0.5 + 0.0j, -0.25j, 0.1 + 0.2j]
    seq = ZeroSequence.from_zeros(zs)
    assert len(seq) == 3
    back = seq.zeros
    assert np.allclose(back, np.asarray(zs), atol=1e-15)
    assert abs(seq.blaschke_sum - sum(1.0 - abs(z) for z in zs)) < 1e-15


def test_zero_sequence_rejects_boundary_zeros():
    with pytest.raises(InvalidZeroError):
        ZeroSequence.from_zeros([0.5, 1.0 + 0.0j])
    with pytest.raises(InvalidZeroError):
        ZeroSequence(angles=[0.0], deficits=[0.0])
    with pytest.raises(InvalidZeroError):
        ZeroSequence(angles=[0.0], deficits=[-0.1])
    with pytest.raises(ValidationError):
        ZeroSequence(angles=[0.0, 1.0], deficits=[0.5])


def test_polar_storage_keeps_tiny_deficits():
    # 1 - 2^-80 is not representable as a float modulus, but the polar form
    # keeps the deficit exactly
    seq = ZeroSequence(angles=[0.3], deficits=[2.0 ** -80])
    assert seq.deficits[0] == 2.0 ** -80
    assert abs(seq.zeros[0]) == 1.0  # the complex view is lossy here


def test_prefix_is_standalone():
    seq = gen_radial_sequence(0.0, 0.5, 10)
    pre = seq.prefix(4)
    assert len(pre) == 4
    assert pre.extension_mass == 0.0
    assert not pre.tail_guarantee
    assert np.array_equal(pre.deficits, seq.deficits[:4])
    with pytest.raises(ValidationError):
        seq.prefix(11)


def test_zero_sequence_json_round_trip():
    seq = ZeroSequence.from_zeros([0.5, -0.25j, 0.1 + 0.2j])
    data = seq.to_json()
    assert set(data.keys()) == {"zeros"}
    assert data["zeros"][0] == {"re": 0.5, "im": 0.0}
    back = ZeroSequence.from_json(data)
    assert np.allclose(back.zeros, seq.zeros, atol=1e-15)


def test_zero_sequence_generator_json():
    seq = ZeroSequence.from_json(
        {"generator": {"kind": "radial", "angle": 0.0, "rate": 0.5, "count": 8}}
    )
    assert len(seq) == 8
    assert seq.tail_guarantee
    with pytest.raises(ValidationError):
        ZeroSequence.from_json({"generator": {"kind": "mystery"}})
    with pytest.raises(ValidationError):
        ZeroSequence.from_json({"generator": {"kind": "radial", "angle": 0.0}})


def test_condition_sum_generator_guarantee():
    seq = gen_radial_sequence(0.0, 0.5, 20)
    cs = blaschke_condition_sum(seq)
    assert cs.convergent
    assert not cs.heuristic
    assert abs(cs.sum - (1.0 - 2.0 ** -20)) < 1e-15


def test_condition_sum_heuristic_trend():
    # harmonic-like deficits: the second half keeps contributing
    n = 256
    slow = ZeroSequence(angles=np.zeros(n), deficits=1.0 / (10.0 + np.arange(n)))
    cs = blaschke_condition_sum(slow)
    assert cs.heuristic
    assert not cs.convergent
    # geometric deficits: the tail is negligible
    fast = ZeroSequence(angles=np.zeros(40), deficits=np.power(0.5, np.arange(1, 41)))
    cs = blaschke_condition_sum(fast)
    assert cs.heuristic
    assert cs.convergent


def test_closed_set_finite_points():
    spec = ClosedSetSpec(kind="finite-points", points=(0.5, -0.5))
    assert spec.angular_distance(0.5) == 0.0
    assert abs(spec.angular_distance(0.6) - 0.1) < 1e-12
    with pytest.raises(ValidationError):
        ClosedSetSpec(kind="finite-points")


def test_closed_set_arcs():
    spec = ClosedSetSpec(kind="arc-union", arcs=((0.0, 1.0), (2.0, 3.0)))
    assert spec.angular_distance(0.5) == 0.0
    assert abs(spec.angular_distance(1.5) - 0.5) < 1e-12
    # wrapping arc covers angles on both sides of 0
    wrap = ClosedSetSpec(kind="arc-union", arcs=((TWO_PI - 0.5, TWO_PI + 0.5),))
    assert wrap.angular_distance(0.25) == 0.0
    assert wrap.angular_distance(TWO_PI - 0.25) == 0.0
    with pytest.raises(ValidationError):
        ClosedSetSpec(kind="arc-union", arcs=((0.0, 1.0), (0.5, 2.0)))


def test_closed_set_cantor():
    spec = ClosedSetSpec(kind="cantor", cantor_level=3, base_arc=(0.0, 1.0))
    arcs = spec.closure_arcs()
    assert len(arcs) == 8
    lengths = [e - s for s, e in arcs]
    assert np.allclose(lengths, 3.0 ** -3)
    # middle third removed at level 1
    assert spec.angular_distance(0.5) > 0.05
    assert spec.angular_distance(1.0 / 27.0) == 0.0
    assert spec.angular_distance(2.0 / 3.0) == 0.0


def test_closed_set_json_round_trip():
    spec = ClosedSetSpec(kind="cantor", cantor_level=2, base_arc=(0.5, 2.5))
    data = spec.to_json()
    assert data["kind"] == "cantor"
    assert data["cantor_level"] == 2
    back = ClosedSetSpec.from_json(data)
    assert back == spec
    with pytest.raises(ValidationError):
        ClosedSetSpec.from_json({"points": [1.0]})


def test_gen_radial_sequence_geometry():
    seq = gen_radial_sequence(1.0, 0.5, 60)
    assert np.all(seq.angles == 1.0)
    assert np.allclose(seq.deficits, np.power(0.5, np.arange(1, 61)), rtol=0.0)
    assert seq.tail_guarantee and seq.convergent
    assert abs(seq.extension_mass - 2.0 ** -60) < 1e-25
    with pytest.raises(ValidationError):
        gen_radial_sequence(0.0, 1.0, 5)
    with pytest.raises(ValidationError):
        gen_radial_sequence(0.0, 0.5, 0)


def _max_gap_to_zeros(target, seq):
    worst = 0.0
    for s, e in target.closure_arcs():
        for t in np.linspace(s, e, 50):
            gaps = [circular_gap(float(t), float(a)) for a in seq.angles]
            worst = max(worst, min(gaps))
    return worst


def test_gen_accumulation_sequence_pins_target():
    rng = np.random.default_rng(11)
    for _ in range(5):
        s = rng.uniform(0.0, TWO_PI)
        length = rng.uniform(0.3, 2.0)
        target = ClosedSetSpec(kind="arc-union", arcs=((s, s + length),))
        depth = 4
        seq = gen_accumulation_sequence(target, depth)
        # every zero angle lies on the target
        for a in seq.angles:
            assert target.angular_distance(float(a)) < 1e-9
        # every target angle is approached at the deepest level's resolution
        assert _max_gap_to_zeros(target, seq) <= TWO_PI * 3.0 ** -depth + 1e-12
        assert seq.extension_mass == 2.0 ** -depth
        assert blaschke_condition_sum(seq).convergent


def test_gen_accumulation_level_mass_is_summable():
    target = ClosedSetSpec(kind="arc-union", arcs=((0.0, TWO_PI),))
    seq = gen_accumulation_sequence(target, 8)
    # level mass is capped at 2^-level, so the whole prefix stays below 1
    assert seq.blaschke_sum < 1.0
    assert np.all(seq.deficits > 0.0)
