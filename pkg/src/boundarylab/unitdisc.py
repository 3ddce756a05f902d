"""Zero sequences in the unit disc and closed target sets on the circle.

A sequence (a_k) in the open disc supports a Blaschke product exactly when
sum(1 - |a_k|) converges.  That deficit sum is the quantity everything
downstream cares about (truncation bounds, Frostman sums, per-level mass
budgets), so ZeroSequence stores each zero in polar form as a pair
(angle, deficit) with deficit = 1 - |a_k| kept exactly.  The complex zeros are
a derived view: for deficits below about 2^-53 the complex value collapses
onto the circle in float64, while the stored deficit stays meaningful.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidZeroError, ValidationError

TWO_PI = 2.0 * math.pi

# Hard cap on the number of zeros any generator may materialize.
MAX_GENERATED_ZEROS = 1_000_000


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    return 0.0 if t >= TWO_PI else t


def circular_gap(a: float, b: float) -> float:
    """Shortest angular distance between two angles."""
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True, eq=False)
class ZeroSequence:
    """A finite prefix of a disc zero sequence, stored in polar form.

    angles[k] and deficits[k] describe a_k = (1 - deficits[k]) * e^(i*angles[k]).
    ``convergent`` records whether the infinite extension is known to satisfy
    the Blaschke condition; ``tail_guarantee`` is True when the sequence came
    from a generator with an analytic tail formula, in which case
    ``extension_mass`` bounds sum(1 - |a_k|) over the unmaterialized tail.
    Explicit finite lists have extension_mass 0 and no guarantee flag, so
    convergence questions about their hypothetical extension fall back to a
    heuristic (see blaschke_condition_sum).
    """

    angles: np.ndarray
    deficits: np.ndarray
    convergent: bool = True
    tail_guarantee: bool = False
    extension_mass: float = 0.0

    def __post_init__(self) -> None:
        angles = np.array(self.angles, dtype=np.float64, copy=True).reshape(-1)
        deficits = np.array(self.deficits, dtype=np.float64, copy=True).reshape(-1)
        if angles.shape != deficits.shape:
            raise ValidationError(
                f"angles and deficits disagree in length: {angles.size} vs {deficits.size}"
            )
        if not np.all(np.isfinite(angles)):
            raise ValidationError("zero angles must be finite")
        if deficits.size and (not np.all(deficits > 0.0) or not np.all(deficits <= 1.0)):
            bad = int(np.argmin((deficits > 0.0) & (deficits <= 1.0)))
            raise InvalidZeroError(
                f"zero #{bad} has modulus {1.0 - deficits[bad]!r}; every zero "
                "must lie strictly inside the unit disc"
            )
        angles = np.mod(angles, TWO_PI)
        angles[angles >= TWO_PI] = 0.0
        angles.flags.writeable = False
        deficits.flags.writeable = False
        object.__setattr__(self, "angles", angles)
        object.__setattr__(self, "deficits", deficits)
        if self.extension_mass < 0.0 or not math.isfinite(self.extension_mass):
            raise ValidationError("extension_mass must be finite and >= 0")

    def __len__(self) -> int:
        return int(self.angles.size)

    @property
    def zeros(self) -> np.ndarray:
        """Complex view of the stored zeros (lossy for tiny deficits)."""
        return (1.0 - self.deficits) * np.exp(1j * self.angles)

    @property
    def blaschke_sum(self) -> float:
        """sum(1 - |a_k|) over the stored prefix."""
        return float(np.sum(self.deficits))

    @classmethod
    def from_zeros(cls, zeros: Iterable[complex]) -> "ZeroSequence":
        """Build from explicit complex zeros; rejects modulus >= 1."""
        zs = [complex(z) for z in zeros]
        angles = np.array([cmath.phase(z) for z in zs], dtype=np.float64)
        moduli = np.array([abs(z) for z in zs], dtype=np.float64)
        for k, m in enumerate(moduli):
            if m >= 1.0:
                raise InvalidZeroError(
                    f"zero #{k} = {zs[k]!r} has modulus {m} >= 1"
                )
        return cls(angles=angles, deficits=1.0 - moduli)

    def prefix(self, n: int) -> "ZeroSequence":
        """First n zeros as a standalone (explicit, guarantee-free) sequence."""
        if not 0 <= n <= len(self):
            raise ValidationError(f"prefix length {n} outside [0, {len(self)}]")
        return ZeroSequence(angles=self.angles[:n].copy(), deficits=self.deficits[:n].copy())

    def to_json(self) -> dict:
        return {
            "zeros": [
                {"re": float(z.real), "im": float(z.imag)} for z in self.zeros
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZeroSequence":
        """Accept {"zeros": [...]} or the generator form {"generator": {...}}."""
        if not isinstance(data, dict):
            raise ValidationError("zero sequence JSON must be an object")
        if "generator" in data:
            gen = data["generator"]
            if not isinstance(gen, dict) or "kind" not in gen:
                raise ValidationError("field 'generator' must be an object with a 'kind'")
            kind = gen["kind"]
            if kind == "radial":
                return gen_radial_sequence(
                    _require_number(gen, "angle"),
                    _require_number(gen, "rate"),
                    _require_int(gen, "count"),
                )
            if kind == "accumulation":
                if "target" not in gen:
                    raise ValidationError("accumulation generator needs a 'target'")
                return gen_accumulation_sequence(
                    ClosedSetSpec.from_json(gen["target"]),
                    _require_int(gen, "depth"),
                )
            raise ValidationError(f"unknown generator kind {kind!r}")
        if "zeros" not in data:
            raise ValidationError("zero sequence JSON needs field 'zeros'")
        zeros = data["zeros"]
        if not isinstance(zeros, list):
            raise ValidationError("field 'zeros' must be a list")
        out = []
        for k, entry in enumerate(zeros):
            if not isinstance(entry, dict) or "re" not in entry or "im" not in entry:
                raise ValidationError(f"zeros[{k}] must be an object with 're' and 'im'")
            out.append(complex(float(entry["re"]), float(entry["im"])))
        return cls.from_zeros(out)


def _require_number(obj: dict, key: str) -> float:
    if key not in obj:
        raise ValidationError(f"missing field {key!r}")
    try:
        return float(obj[key])
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"field {key!r} must be a number") from exc


def _require_int(obj: dict, key: str) -> int:
    if key not in obj:
        raise ValidationError(f"missing field {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"field {key!r} must be an integer")
    return value


class ConditionSum(NamedTuple):
    """Result of blaschke_condition_sum.

    ``heuristic`` is True when ``convergent`` came from a trend test on the
    stored prefix rather than from a generator's analytic guarantee.
    """

    sum: float
    convergent: bool
    heuristic: bool


# Below this many stored zeros the doubling-tail heuristic has no trend to
# read, so short explicit lists are reported convergent (they are finite).
_HEURISTIC_MIN_TERMS = 16
_HEURISTIC_TAIL_RATIO = 0.05


def blaschke_condition_sum(seq: ZeroSequence) -> ConditionSum:
    """Deficit sum of the stored prefix plus a convergence verdict.

    When the sequence carries a generator guarantee the verdict is exact.
    Otherwise the verdict extrapolates the stored trend: if the second half
    of the prefix still contributes at least 5% of the total, the tail looks
    divergent (harmonic-like decay keeps doubling windows heavy; geometric
    decay does not).  The heuristic flag is always set in that branch.
    """
    total = float(math.fsum(seq.deficits.tolist()))
    if seq.tail_guarantee:
        return ConditionSum(total, seq.convergent, False)
    n = len(seq)
    if n < _HEURISTIC_MIN_TERMS or total == 0.0:
        return ConditionSum(total, True, True)
    half = float(np.sum(seq.deficits[n // 2:]))
    return ConditionSum(total, (half / total) < _HEURISTIC_TAIL_RATIO, True)


_CLOSED_SET_KINDS = ("finite-points", "arc-union", "cantor")
_FULL_CIRCLE_SLACK = 1e-9
MAX_CANTOR_LEVEL = 20


@dataclass(frozen=True)
class ClosedSetSpec:
    """A closed subset of the unit circle, described by angles.

    kind "finite-points": the listed angles.
    kind "arc-union": a union of closed arcs [start, end] (end may wrap past
    2*pi; overlap of positive length between listed arcs is rejected).
    kind "cantor": the level-n middle-thirds prefigure of base_arc, i.e. the
    union of 2^n closed subarcs each a 3^-n fraction of the base arc.
    """

    kind: str
    points: tuple[float, ...] = ()
    arcs: tuple[tuple[float, float], ...] = ()
    cantor_level: int = 0
    base_arc: tuple[float, float] = (0.0, TWO_PI)

    def __post_init__(self) -> None:
        if self.kind not in _CLOSED_SET_KINDS:
            raise ValidationError(
                f"kind must be one of {_CLOSED_SET_KINDS}, got {self.kind!r}"
            )
        object.__setattr__(
            self, "points", tuple(normalize_angle(float(p)) for p in self.points)
        )
        object.__setattr__(
            self, "arcs", tuple(_normalize_arc(s, e) for (s, e) in self.arcs)
        )
        object.__setattr__(self, "base_arc", _normalize_arc(*self.base_arc))
        if self.kind == "finite-points":
            if not self.points:
                raise ValidationError("finite-points spec needs at least one angle")
        elif self.kind == "arc-union":
            if not self.arcs:
                raise ValidationError("arc-union spec needs at least one arc")
            _check_arcs_disjoint(self.arcs)
        else:
            if not isinstance(self.cantor_level, int) or isinstance(self.cantor_level, bool):
                raise ValidationError("cantor_level must be an integer")
            if not 0 <= self.cantor_level <= MAX_CANTOR_LEVEL:
                raise ValidationError(
                    f"cantor_level must lie in [0, {MAX_CANTOR_LEVEL}]"
                )

    def closure_arcs(self) -> list[tuple[float, float]]:
        """The closure as a list of (start, end) arcs; points are degenerate."""
        if self.kind == "finite-points":
            return [(p, p) for p in self.points]
        if self.kind == "arc-union":
            return list(self.arcs)
        return _cantor_subarcs(self.base_arc, self.cantor_level)

    def angular_distance(self, theta: float) -> float:
        """Distance (in angle) from theta to the closure."""
        best = math.inf
        for s, e in self.closure_arcs():
            best = min(best, _distance_to_arc(theta, s, e))
            if best == 0.0:
                break
        return best

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "points": [float(p) for p in self.points],
            "arcs": [[float(s), float(e)] for (s, e) in self.arcs],
            "cantor_level": int(self.cantor_level),
            "base_arc": [float(self.base_arc[0]), float(self.base_arc[1])],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClosedSetSpec":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("closed-set JSON must be an object with a 'kind'")
        points = data.get("points", [])
        arcs = data.get("arcs", [])
        if not isinstance(points, list) or not isinstance(arcs, list):
            raise ValidationError("'points' and 'arcs' must be lists")
        for k, arc in enumerate(arcs):
            if not (isinstance(arc, (list, tuple)) and len(arc) == 2):
                raise ValidationError(f"arcs[{k}] must be a [start, end] pair")
        base = data.get("base_arc", [0.0, TWO_PI])
        if not (isinstance(base, (list, tuple)) and len(base) == 2):
            raise ValidationError("'base_arc' must be a [start, end] pair")
        level = data.get("cantor_level", 0)
        if isinstance(level, bool) or not isinstance(level, int):
            raise ValidationError("'cantor_level' must be an integer")
        return cls(
            kind=data["kind"],
            points=tuple(float(p) for p in points),
            arcs=tuple((float(s), float(e)) for (s, e) in arcs),
            cantor_level=level,
            base_arc=(float(base[0]), float(base[1])),
        )


def _normalize_arc(start: float, end: float) -> tuple[float, float]:
    """Normalize to (s, s + length) with s in [0, 2*pi) and 0 < length <= 2*pi."""
    if not (math.isfinite(start) and math.isfinite(end)):
        raise ValidationError("arc endpoints must be finite")
    length = end - start
    if length <= 0.0 or length > TWO_PI:
        length = length % TWO_PI
    if length == 0.0:
        if end == start:
            raise ValidationError("zero-length arc; use finite-points for single angles")
        length = TWO_PI
    s = normalize_angle(start)
    return (s, s + length)


def _arc_segments(arc: tuple[float, float]) -> list[tuple[float, float]]:
    """Split a possibly wrapping arc into non-wrapping [s, e] pieces in [0, 2*pi]."""
    s, e = arc
    if e <= TWO_PI:
        return [(s, e)]
    return [(s, TWO_PI), (0.0, e - TWO_PI)]


def _check_arcs_disjoint(arcs: Sequence[tuple[float, float]]) -> None:
    segs: list[tuple[float, float]] = []
    for arc in arcs:
        segs.extend(_arc_segments(arc))
    segs.sort()
    for (s1, e1), (s2, e2) in zip(segs, segs[1:]):
        if s2 < e1 - 1e-15:
            raise ValidationError(
                f"arcs overlap near angle {s2:.6g}; arc-union arcs must be disjoint"
            )


def _distance_to_arc(theta: float, start: float, end: float) -> float:
    t = start + ((theta - start) % TWO_PI)
    if t <= end:
        return 0.0
    return min(t - end, start + TWO_PI - t)


def _cantor_subarcs(base: tuple[float, float], level: int) -> list[tuple[float, float]]:
    s0, e0 = base
    pieces = [(s0, e0 - s0)]
    for _ in range(level):
        nxt = []
        for s, length in pieces:
            third = length / 3.0
            nxt.append((s, third))
            nxt.append((s + 2.0 * third, third))
        pieces = nxt
    return [(s, s + length) for (s, length) in pieces]


def gen_radial_sequence(angle: float, rate: float, count: int) -> ZeroSequence:
    """Zeros a_k = (1 - rate^k) e^(i*angle), k = 1..count.

    The deficit sum is geometric, so the Blaschke condition holds for the
    infinite extension; extension_mass carries the exact geometric tail.
    """
    if not (0.0 < rate < 1.0):
        raise ValidationError(f"rate must lie in (0, 1), got {rate!r}")
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ValidationError(f"count must be a positive integer, got {count!r}")
    if count > MAX_GENERATED_ZEROS:
        raise ValidationError(
            f"count {count} exceeds the {MAX_GENERATED_ZEROS} generated-zero cap"
        )
    k = np.arange(1, count + 1, dtype=np.float64)
    deficits = np.power(rate, k)
    angles = np.full(count, normalize_angle(angle), dtype=np.float64)
    tail = rate ** (count + 1) / (1.0 - rate)
    return ZeroSequence(
        angles=angles,
        deficits=deficits,
        convergent=True,
        tail_guarantee=True,
        extension_mass=tail,
    )


def _level_angles(target: ClosedSetSpec, level: int) -> list[float]:
    """Angles for one generator level: gap at most 2*pi*3^-level on each arc."""
    if target.kind == "finite-points":
        return list(target.points)
    gap = TWO_PI * (3.0 ** -level)
    out: list[float] = []
    for s, e in target.closure_arcs():
        length = e - s
        if length >= TWO_PI - _FULL_CIRCLE_SLACK:
            m = max(int(math.ceil(TWO_PI / gap)), 3)
            step = TWO_PI / m
            out.extend(normalize_angle(s + j * step) for j in range(m))
        elif length == 0.0:
            out.append(s)
        else:
            m = max(int(math.ceil(length / gap)) + 1, 2)
            step = length / (m - 1)
            out.extend(normalize_angle(s + j * step) for j in range(m))
    return out


def gen_accumulation_sequence(target: ClosedSetSpec, depth: int) -> ZeroSequence:
    """Zeros whose accumulation set on the circle is exactly the target closure.

    Level l (= 1..depth) places zeros at angles inside the target with angular
    gap at most 2*pi*3^-l, all at the same radius 1 - d_l where
    d_l = min(3^-l, 2^-l / n_l) and n_l is the level population.  The radius
    cap keeps level-l Blaschke mass at most 2^-l, so the infinite extension
    satisfies the Blaschke condition with tail mass at most 2^-depth beyond
    the stored prefix.  Every angle of the target has a level-l zero within
    angular distance 2*pi*3^-l, which pins the accumulation set to the target
    closure and nothing else (all zero angles lie on the target).
    """
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 1:
        raise ValidationError(f"depth must be a positive integer, got {depth!r}")
    angles: list[np.ndarray] = []
    deficits: list[np.ndarray] = []
    total = 0
    for level in range(1, depth + 1):
        level_angles = _level_angles(target, level)
        n = len(level_angles)
        total += n
        if total > MAX_GENERATED_ZEROS:
            raise ValidationError(
                f"level {level} pushes the zero count past {MAX_GENERATED_ZEROS}; "
                "reduce depth or the target resolution"
            )
        d = min(3.0 ** -level, (2.0 ** -level) / n)
        angles.append(np.asarray(level_angles, dtype=np.float64))
        deficits.append(np.full(n, d, dtype=np.float64))
    return ZeroSequence(
        angles=np.concatenate(angles),
        deficits=np.concatenate(deficits),
        convergent=True,
        tail_guarantee=True,
        extension_mass=2.0 ** -depth,
    )
