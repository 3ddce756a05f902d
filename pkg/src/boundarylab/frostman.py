"""Frostman sums: do the zeros crowd a boundary point too hard?

For zeros a_k and a boundary angle theta the partial sums

    f_n(theta) = sum_{k<=n} (1 - |a_k|) / |e^(i theta) - a_k|

decide (in the limit) whether the Blaschke product has a unimodular radial
limit at theta: bounded sums mean the zeros approach e^(i theta) slowly enough.
Numerically only a prefix is visible, so the classifier is a trichotomy:
divergent once the sum passes a threshold, convergent once the tail over the
last few prefix doublings is negligible, undecided otherwise.

The distance in the denominator is evaluated from the polar representation:

    |e^(i theta) - a| = hypot(d, 2 sqrt(1-d) sin(gap/2)),   d = 1 - |a|,

which is exact at gap = 0 (the term is exactly 1 there, for any positive d,
subnormals included) and never cancels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TextIO

import numpy as np

from . import config
from .errors import ValidationError
from .textio import write_csv
from .unitdisc import TWO_PI, ZeroSequence, normalize_angle

CONVERGENT = "convergent"
DIVERGENT = "divergent"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class FrostmanPolicy:
    """Thresholds for the three-way classification."""

    divergence_threshold: float = config.DEFAULTS["frostman_divergence_threshold"]
    growth_window: int = config.DEFAULTS["frostman_growth_window"]
    cauchy_tolerance: float = config.DEFAULTS["frostman_cauchy_tolerance"]

    def __post_init__(self) -> None:
        if self.divergence_threshold <= 0.0:
            raise ValidationError("divergence_threshold must be positive")
        if self.growth_window < 1:
            raise ValidationError("growth_window must be at least 1")
        if self.cauchy_tolerance <= 0.0:
            raise ValidationError("cauchy_tolerance must be positive")


def frostman_terms(seq: ZeroSequence, theta: float) -> np.ndarray:
    """Per-zero summands (1 - |a_k|) / |e^(i theta) - a_k| in stored order."""
    theta = normalize_angle(theta)
    d = seq.deficits
    half_gap = 0.5 * (seq.angles - theta)
    chord = 2.0 * np.sqrt(1.0 - d) * np.abs(np.sin(half_gap))
    return d / np.hypot(d, chord)


def frostman_partial(seq: ZeroSequence, theta: float, n: int) -> float:
    """f_n(theta) over the first n stored zeros."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValidationError(f"prefix length must be a nonnegative integer, got {n!r}")
    if n > len(seq):
        raise ValidationError(f"prefix length {n} exceeds the {len(seq)} stored zeros")
    if n == 0:
        return 0.0
    return float(np.sum(frostman_terms(seq, theta)[:n]))


def doubling_schedule(count: int) -> tuple[int, ...]:
    """1, 2, 4, ... capped at count, with count itself as the last entry."""
    if count <= 0:
        return (0,)
    out = []
    n = 1
    while n < count:
        out.append(n)
        n *= 2
    out.append(count)
    return tuple(out)


@dataclass(frozen=True)
class FrostmanReport:
    """Classification at one angle with the partial sums that justified it."""

    theta: float
    classification: str
    schedule: tuple[int, ...]
    partial_sums: tuple[float, ...]
    tail: float


def _classify_sums(sums: Sequence[float], policy: FrostmanPolicy) -> tuple[str, float]:
    final = sums[-1] if sums else 0.0
    base_index = max(0, len(sums) - 1 - policy.growth_window)
    tail = final - (sums[base_index] if sums else 0.0)
    if final >= policy.divergence_threshold:
        return DIVERGENT, tail
    if tail < policy.cauchy_tolerance:
        return CONVERGENT, tail
    return UNDECIDED, tail


def frostman_classify(
    seq: ZeroSequence,
    theta: float,
    policy: FrostmanPolicy | None = None,
) -> FrostmanReport:
    """Three-way verdict for the Frostman sum at one angle.

    Divergence wins when the full-prefix sum reaches the threshold; otherwise
    the sum is convergent when the last growth_window prefix doublings added
    less than the Cauchy tolerance, and undecided when still growing.
    """
    policy = FrostmanPolicy() if policy is None else policy
    theta = normalize_angle(theta)
    schedule = doubling_schedule(len(seq))
    if len(seq) == 0:
        sums: tuple[float, ...] = (0.0,)
    else:
        cumulative = np.cumsum(frostman_terms(seq, theta))
        sums = tuple(float(cumulative[n - 1]) for n in schedule)
    classification, tail = _classify_sums(sums, policy)
    return FrostmanReport(
        theta=theta,
        classification=classification,
        schedule=schedule,
        partial_sums=sums,
        tail=tail,
    )


@dataclass(frozen=True, eq=False)
class FrostmanProfile:
    """Frostman sums on a uniform angle grid.

    partial_sums has shape (angle_count, len(schedule)); classifications is a
    string per angle; divergent_fraction is the grid measure of DIVERGENT.
    """

    angles: np.ndarray
    schedule: tuple[int, ...]
    partial_sums: np.ndarray
    classifications: tuple[str, ...]
    divergent_fraction: float

    def write_csv(self, handle: TextIO) -> None:
        def rows():
            for i, angle in enumerate(self.angles):
                for j, n in enumerate(self.schedule):
                    yield (
                        float(angle),
                        int(n),
                        float(self.partial_sums[i, j]),
                        self.classifications[i],
                    )

        write_csv(handle, ("angle", "n", "partial_sum", "classification"), rows())


# chunk cap for the (angles x zeros) term matrix, in elements
_PROFILE_CHUNK_ELEMENTS = 4_000_000


def frostman_profile(
    seq: ZeroSequence,
    angle_count: int,
    prefix_schedule: Sequence[int] | None = None,
    policy: FrostmanPolicy | None = None,
) -> FrostmanProfile:
    """Classify every angle of a uniform grid; sums computed by brute force."""
    if not isinstance(angle_count, int) or isinstance(angle_count, bool) or angle_count < 1:
        raise ValidationError(f"angle_count must be a positive integer, got {angle_count!r}")
    policy = FrostmanPolicy() if policy is None else policy
    if prefix_schedule is None:
        schedule = doubling_schedule(len(seq))
    else:
        schedule = tuple(int(n) for n in prefix_schedule)
        if not schedule:
            raise ValidationError("prefix schedule must be nonempty")
        for n in schedule:
            if n < 0 or n > len(seq):
                raise ValidationError(f"schedule entry {n} outside [0, {len(seq)}]")
        if any(b <= a for a, b in zip(schedule, schedule[1:])):
            raise ValidationError("prefix schedule must be strictly increasing")

    angles = TWO_PI * np.arange(angle_count, dtype=np.float64) / angle_count
    n_zeros = len(seq)
    sums = np.zeros((angle_count, len(schedule)), dtype=np.float64)
    if n_zeros:
        cols = np.asarray(schedule, dtype=np.int64)
        chunk = max(1, _PROFILE_CHUNK_ELEMENTS // max(n_zeros, 1))
        d = seq.deficits[None, :]
        chord_base = 2.0 * np.sqrt(1.0 - seq.deficits)[None, :]
        for lo in range(0, angle_count, chunk):
            hi = min(lo + chunk, angle_count)
            half_gap = 0.5 * (seq.angles[None, :] - angles[lo:hi, None])
            terms = d / np.hypot(d, chord_base * np.abs(np.sin(half_gap)))
            cumulative = np.cumsum(terms, axis=1)
            padded = np.concatenate(
                [np.zeros((hi - lo, 1)), cumulative], axis=1
            )
            sums[lo:hi, :] = padded[:, cols]
    classifications = []
    for i in range(angle_count):
        cls, _ = _classify_sums(sums[i, :].tolist(), policy)
        classifications.append(cls)
    divergent_fraction = float(
        sum(1 for c in classifications if c == DIVERGENT) / angle_count
    )
    return FrostmanProfile(
        angles=angles,
        schedule=schedule,
        partial_sums=sums,
        classifications=tuple(classifications),
        divergent_fraction=divergent_fraction,
    )
