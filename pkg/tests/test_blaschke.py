import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from boundarylab.blaschke import (
    BlaschkeProduct,
    boundary_scan,
    default_radius_schedule,
    eval_factor,
    limit_probe,
    radial_trace,
    standard_paths,
)
from boundarylab.errors import PoleError, PrefixExhaustedError, ValidationError
from boundarylab.unitdisc import (
    ClosedSetSpec,
    ZeroSequence,
    gen_accumulation_sequence,
    gen_radial_sequence,
)


def test_eval_factor_basics():
    a = 0.3 + 0.4j
    assert abs(eval_factor(a, a)) < 1e-15
    for t in np.linspace(0.0, 2.0 * math.pi, 17):
        z = cmath.exp(1j * t)
        assert abs(abs(eval_factor(a, z)) - 1.0) < 1e-14
    # the zero at the origin degenerates to the identity factor
    z = 0.2 - 0.7j
    assert eval_factor(0.0, z) == z


def test_product_at_zero_matches_rational_oracle():
    # sum_{k=1..200} of log(1 - 2^-k) computed in exact arithmetic, then one
    # float conversion at the end
    prod = Fraction(1)
    for k in range(1, 201):
        prod *= 1 - Fraction(1, 2 ** k)
    oracle = float(prod)
    assert oracle == 0.28878809508660242

    seq = gen_radial_sequence(0.0, 0.5, 60)
    prod = BlaschkeProduct(seq)
    got = prod.eval_truncated(0.0, 1e-12)
    assert abs(got.value - oracle) <= 2e-12
    assert got.tail_bound <= 1e-12


def test_truncation_bound_is_honest():
    rng = np.random.default_rng(7)
    seq = gen_radial_sequence(0.25, 0.5, 64)
    prod = BlaschkeProduct(seq)
    for _ in range(40):
        r = rng.uniform(0.0, 0.9)
        t = rng.uniform(0.0, 2.0 * math.pi)
        z = r * cmath.exp(1j * t)
        full = prod.eval_partial(64, z)
        for n in (8, 16, 32):
            part = prod.eval_partial(n, z)
            bound = prod.tail_bound(abs(z), n)
            assert abs(full - part) <= bound + 1e-15


def test_factors_needed_and_exhaustion():
    seq = gen_radial_sequence(0.0, 0.5, 30)
    prod = BlaschkeProduct(seq)
    n = prod.factors_needed(0.5, 1e-6)
    assert 0 < n <= 30
    assert prod.tail_bound(0.5, n) <= 1e-6
    # the generator tail alone exceeds a tolerance this tight at r close to 1
    assert prod.factors_needed(0.9999999, 1e-12) == -1
    with pytest.raises(PrefixExhaustedError):
        prod.eval_truncated(0.9999999, 1e-12)
    got = prod.eval_best_effort(0.9999999 + 0.0j)
    assert got.factors_used == 30
    assert abs(got.value) <= 1.0 + 1e-12


def test_riesz_mean_square_identity():
    # mean of |B_n - B_m|^2 over the circle is 2(1 - prod_{m+1..n} |a_k|);
    # both sides are trig polynomials, so a 4096-point trapezoid rule is exact
    rng = np.random.default_rng(21)
    radii = rng.uniform(0.1, 0.9, size=12)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=12)
    seq = ZeroSequence(angles=angles, deficits=1.0 - radii)
    prod = BlaschkeProduct(seq)
    n, m = 12, 5
    ts = np.arange(4096) * (2.0 * math.pi / 4096)
    zs = np.exp(1j * ts)
    diff = np.array([prod.eval_partial(n, z) - prod.eval_partial(m, z) for z in zs])
    lhs = float(np.mean(np.abs(diff) ** 2))
    rhs = 2.0 * (1.0 - float(np.prod(radii[m:n])))
    assert abs(lhs - rhs) < 1e-12


def test_zeros_are_interpolated():
    seq = ZeroSequence.from_zeros([0.5, -0.3 + 0.4j, 0.1j])
    prod = BlaschkeProduct(seq)
    for z in seq.zeros:
        assert abs(prod.eval_partial(3, complex(z))) < 1e-12


def test_default_radius_schedule():
    radii = default_radius_schedule(10)
    assert len(radii) == 10
    assert np.allclose(radii, 1.0 - np.power(0.5, np.arange(1, 11)), rtol=0.0)
    assert np.all(np.diff(radii) > 0.0)
    with pytest.raises(ValidationError):
        default_radius_schedule(0)


def test_chunked_eval_matches_direct_product():
    # one more zero than the chunk size forces the two-chunk path
    n = 65537
    rng = np.random.default_rng(3)
    angles = rng.uniform(0.0, 2.0 * math.pi, size=n)
    deficits = np.power(0.999, np.arange(n)) * 1e-3
    seq = ZeroSequence(angles=angles, deficits=deficits)
    prod = BlaschkeProduct(seq)
    z = 0.3 + 0.1j
    got = prod.eval_partial(n, z)
    direct = complex(np.multiply.reduce(prod._factors(z, n)))
    assert abs(got - direct) <= 1e-9 * max(1.0, abs(direct))
    assert abs(got) <= 1.0
    # same call twice gives the identical float
    assert prod.eval_partial(n, z) == got


def test_boundary_pole_detection():
    # the deficit is below float resolution, so the stored modulus collapses
    # to 1 and the factor has a genuine pole at z = 1
    seq = ZeroSequence(angles=[0.0], deficits=[2.0 ** -54])
    prod = BlaschkeProduct(seq)
    with pytest.raises(PoleError):
        prod.eval_partial(1, 1.0 + 0.0j)


def test_radial_trace_limit_and_oscillation():
    seq = gen_radial_sequence(0.0, 0.5, 60)
    prod = BlaschkeProduct(seq)
    radii = default_radius_schedule(30)
    # at the antipode the product converges: every factor is (a+1)/(1+a) = 1
    # at z = -1, so the trace settles near B(-1) = 1
    tr = radial_trace(prod, math.pi, radii, verdict_tolerance=1e-3, window=8)
    assert tr.limit_estimate is not None
    assert abs(tr.limit_estimate - 1.0) < 1e-3
    assert tr.oscillation < 1e-3
    # midpoint radii interleave the zeros, so the trace keeps swinging
    mids = 1.0 - 1.5 * np.power(0.5, np.arange(1, 31))
    tr = radial_trace(prod, 0.0, mids, verdict_tolerance=1e-3, window=8)
    assert tr.oscillation > 1e-3
    assert tr.limit_estimate is None
    with pytest.raises(ValidationError):
        radial_trace(prod, 0.0, [0.5, 0.5], verdict_tolerance=1e-3, window=4)
    with pytest.raises(ValidationError):
        radial_trace(prod, 0.0, [0.5, 1.0], verdict_tolerance=1e-3, window=4)


def test_boundary_scan_report():
    import io

    seq = gen_radial_sequence(0.0, 0.5, 60)
    prod = BlaschkeProduct(seq)
    scan = boundary_scan(prod, 0.99, 128, delta=0.05)
    assert len(scan.angles) == 128
    assert len(scan.values) == 128
    assert 0.0 <= scan.fraction_near_one <= 1.0
    assert scan.fraction_near_one > 0.5
    assert scan.modulus_min <= scan.modulus_mean <= scan.modulus_max
    buf = io.StringIO()
    scan.write_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "angle,re,im,modulus"
    assert len(lines) == 129
    assert lines[1].startswith("0,")
    with pytest.raises(ValidationError):
        boundary_scan(prod, 1.0, 16)
    with pytest.raises(ValidationError):
        boundary_scan(prod, 0.9, 0)


def test_standard_paths_shapes():
    paths = standard_paths()
    assert len(paths) == 5
    roles = [p.role for p in paths]
    assert roles.count("radial") == 1
    assert roles.count("tangential") == 2
    radii = np.array([0.5, 0.9, 0.99])
    for p in paths:
        pts = p.sample_points(0.7, radii)
        assert np.all(np.abs(pts) < 1.0)
        assert np.allclose(np.abs(pts), radii)
    # radial path heads straight at the boundary point
    radial = next(p for p in paths if p.role == "radial")
    pts = radial.sample_points(0.7, radii)
    assert np.allclose(np.angle(pts), 0.7)


def test_limit_probe_custom_family_validation():
    seq = gen_radial_sequence(0.0, 0.5, 40)
    prod = BlaschkeProduct(seq)
    radial = [p for p in standard_paths() if p.role == "radial"]
    tangential = [p for p in standard_paths() if p.role == "tangential"]
    with pytest.raises(ValidationError):
        limit_probe(prod, 0.0, paths=radial)  # no tangential companions
    with pytest.raises(ValidationError):
        limit_probe(prod, 0.0, paths=tangential)  # no radial spine
    report = limit_probe(prod, 0.0, paths=radial + tangential)
    assert len(report.path_limits) == 3


def test_limit_probe_zero_chase_path():
    target = ClosedSetSpec(kind="arc-union", arcs=((0.0, 2.0 * math.pi),))
    seq = gen_accumulation_sequence(target, 6)
    prod = BlaschkeProduct(seq)
    report = limit_probe(prod, 1.0)
    names = [p.name for p in report.path_limits]
    assert "zero-chase" in names
    assert report.cluster_diameter_estimate >= 0.0
    data = report.to_json()
    assert set(data.keys()) == {
        "angle",
        "paths",
        "cluster_diameter_estimate",
        "radial_exists",
    }
