"""Poisson and Herglotz kernels; singular inner and outer functions.

The Poisson kernel is evaluated as

    p_r(t) = (1 - r^2) / ((1 - r)^2 + 4 r sin(t/2)^2)

which is the textbook (1 - r^2)/(1 - 2 r cos t + r^2) rearranged so the
denominator never cancels catastrophically as r -> 1.  The kernel maximum
(1+r)/(1-r) stays finite for every float r < 1, so there is no extra floor;
callers pay for r near 1 in quadrature points instead (the adaptive loop
doubles the grid until two refinements agree).

Integrals over the circle use the uniform trapezoid rule, which for periodic
integrands is spectrally accurate: the error decays like r^n for the Poisson
kernel at radius r, so doubling converges fast until the boundary data itself
limits smoothness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .errors import PoleError, ResolutionError, ValidationError
from .unitdisc import TWO_PI, normalize_angle

_FORM_NAMES = ("cos", "sin", "indicator-arc")
_MIN_SAMPLE_COUNT = 16


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Boundary data on the circle: a constant, uniform samples, or a form.

    Samples live on a uniform grid over [0, 2*pi) with at least 16 points and
    are evaluated between grid points by periodic linear interpolation.
    Closed forms are limited to the registered set {cos, sin, indicator-arc};
    forms take an optional real scale (so e.g. log(2) * indicator is a form).
    """

    kind: str
    value: complex = 0.0 + 0.0j
    sample_values: np.ndarray | None = None
    form_name: str = ""
    arc: tuple[float, float] = (0.0, math.pi)
    scale: float = 1.0

    @classmethod
    def constant(cls, value: complex) -> "BoundaryFunction":
        return cls(kind="constant", value=complex(value))

    @classmethod
    def from_samples(cls, angles, values) -> "BoundaryFunction":
        angles = np.asarray(angles, dtype=np.float64)
        values = np.asarray(values, dtype=np.complex128)
        if angles.shape != values.shape or angles.ndim != 1:
            raise ValidationError("samples need matching 1-d angle and value arrays")
        n = angles.size
        if n < _MIN_SAMPLE_COUNT:
            raise ValidationError(f"need at least {_MIN_SAMPLE_COUNT} samples, got {n}")
        expected = TWO_PI * np.arange(n) / n
        if not np.allclose(angles, expected, atol=1e-9, rtol=0.0):
            raise ValidationError("sample angles must be the uniform grid 2*pi*j/n")
        return cls(kind="samples", sample_values=values.copy())

    @classmethod
    def form(cls, name: str, *, arc: tuple[float, float] | None = None,
             scale: float = 1.0) -> "BoundaryFunction":
        if name not in _FORM_NAMES:
            raise ValidationError(f"unknown form {name!r}; registered: {_FORM_NAMES}")
        if not math.isfinite(scale):
            raise ValidationError("form scale must be finite")
        if name == "indicator-arc":
            if arc is None:
                raise ValidationError("indicator-arc needs an arc [start, end]")
            s, e = float(arc[0]), float(arc[1])
            if not (math.isfinite(s) and math.isfinite(e) and e > s):
                raise ValidationError("indicator arc must satisfy end > start")
            return cls(kind="form", form_name=name, arc=(s, e), scale=float(scale))
        return cls(kind="form", form_name=name, scale=float(scale))

    def evaluate(self, theta) -> np.ndarray:
        """Values at the given angles (array in, complex array out)."""
        t = np.asarray(theta, dtype=np.float64)
        if self.kind == "constant":
            return np.full(t.shape, self.value, dtype=np.complex128)
        if self.kind == "samples":
            vals = self.sample_values
            n = vals.size
            pos = (np.mod(t, TWO_PI)) * n / TWO_PI
            i0 = np.floor(pos).astype(np.int64) % n
            frac = pos - np.floor(pos)
            i1 = (i0 + 1) % n
            return vals[i0] * (1.0 - frac) + vals[i1] * frac
        if self.form_name == "cos":
            return (self.scale * np.cos(t)).astype(np.complex128)
        if self.form_name == "sin":
            return (self.scale * np.sin(t)).astype(np.complex128)
        s, e = self.arc
        lifted = s + np.mod(t - s, TWO_PI)
        return (self.scale * (lifted <= e)).astype(np.complex128)

    def is_real(self) -> bool:
        if self.kind == "constant":
            return self.value.imag == 0.0
        if self.kind == "samples":
            return bool(np.all(self.sample_values.imag == 0.0))
        return True

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "re": self.value.real, "im": self.value.imag}
        if self.kind == "samples":
            n = self.sample_values.size
            grid = TWO_PI * np.arange(n) / n
            return {
                "kind": "samples",
                "samples": [
                    [float(a), float(v.real), float(v.imag)]
                    for a, v in zip(grid, self.sample_values)
                ],
            }
        out = {"kind": "form", "name": self.form_name, "scale": float(self.scale)}
        if self.form_name == "indicator-arc":
            out["arc"] = [float(self.arc[0]), float(self.arc[1])]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "BoundaryFunction":
        if not isinstance(data, dict) or "kind" not in data:
            raise ValidationError("boundary function JSON must be an object with a 'kind'")
        kind = data["kind"]
        if kind == "constant":
            if "re" not in data or "im" not in data:
                raise ValidationError("constant boundary function needs 're' and 'im'")
            return cls.constant(complex(float(data["re"]), float(data["im"])))
        if kind == "samples":
            samples = data.get("samples")
            if not isinstance(samples, list) or not samples:
                raise ValidationError("field 'samples' must be a nonempty list")
            try:
                angles = [float(row[0]) for row in samples]
                values = [complex(float(row[1]), float(row[2])) for row in samples]
            except (TypeError, ValueError, IndexError) as exc:
                raise ValidationError("each sample must be [angle, re, im]") from exc
            return cls.from_samples(angles, values)
        if kind == "form":
            name = data.get("name")
            if not isinstance(name, str):
                raise ValidationError("form boundary function needs a string 'name'")
            arc = data.get("arc")
            return cls.form(
                name,
                arc=None if arc is None else (float(arc[0]), float(arc[1])),
                scale=float(data.get("scale", 1.0)),
            )
        raise ValidationError(f"unknown boundary function kind {kind!r}")


@dataclass(frozen=True)
class SingularAtoms:
    """A purely atomic positive singular measure on the circle."""

    angles: tuple[float, ...]
    masses: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.angles) != len(self.masses):
            raise ValidationError("atom angles and masses disagree in length")
        if not self.angles:
            raise ValidationError("need at least one atom")
        norm = tuple(normalize_angle(float(a)) for a in self.angles)
        if len(set(norm)) != len(norm):
            raise ValidationError("atom angles must be pairwise distinct mod 2*pi")
        for m in self.masses:
            if not (math.isfinite(m) and m > 0.0):
                raise ValidationError(f"atom masses must be finite and positive, got {m!r}")
        object.__setattr__(self, "angles", norm)
        object.__setattr__(self, "masses", tuple(float(m) for m in self.masses))

    @property
    def total_mass(self) -> float:
        return float(math.fsum(self.masses))

    def to_json(self) -> dict:
        return {"atoms": [[a, m] for a, m in zip(self.angles, self.masses)]}

    @classmethod
    def from_json(cls, data: dict) -> "SingularAtoms":
        if not isinstance(data, dict) or not isinstance(data.get("atoms"), list):
            raise ValidationError("singular atoms JSON needs a list field 'atoms'")
        try:
            angles = tuple(float(row[0]) for row in data["atoms"])
            masses = tuple(float(row[1]) for row in data["atoms"])
        except (TypeError, ValueError, IndexError) as exc:
            raise ValidationError("each atom must be [angle, mass]") from exc
        return cls(angles=angles, masses=masses)


@dataclass(frozen=True)
class OuterDensity:
    """Boundary log-modulus k and a unimodular constant for an outer function."""

    k: BoundaryFunction
    lam: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if not isinstance(self.k, BoundaryFunction):
            raise ValidationError("outer density k must be a BoundaryFunction")
        if not self.k.is_real():
            raise ValidationError("outer density k must be real-valued")
        if abs(abs(complex(self.lam)) - 1.0) > 1e-12:
            raise ValidationError(
                f"outer constant must have modulus 1 (within 1e-12), got {self.lam!r}"
            )
        object.__setattr__(self, "lam", complex(self.lam))

    def to_json(self) -> dict:
        return {
            "k": self.k.to_json(),
            "lambda": {"re": self.lam.real, "im": self.lam.imag},
        }

    @classmethod
    def from_json(cls, data: dict) -> "OuterDensity":
        if not isinstance(data, dict) or "k" not in data:
            raise ValidationError("outer density JSON needs field 'k'")
        lam = data.get("lambda", {"re": 1.0, "im": 0.0})
        if not isinstance(lam, dict) or "re" not in lam or "im" not in lam:
            raise ValidationError("field 'lambda' must be {re, im}")
        return cls(
            k=BoundaryFunction.from_json(data["k"]),
            lam=complex(float(lam["re"]), float(lam["im"])),
        )


def poisson_kernel(r: float, theta) -> np.ndarray | float:
    """p_r(theta) >= 0 with mean 1 over the circle; scalar or array theta."""
    if not (0.0 <= r < 1.0):
        raise ValidationError(f"kernel radius must lie in [0, 1), got {r!r}")
    t = np.asarray(theta, dtype=np.float64)
    s = np.sin(0.5 * t)
    out = (1.0 - r * r) / ((1.0 - r) ** 2 + 4.0 * r * s * s)
    return float(out) if np.isscalar(theta) or out.ndim == 0 else out


def _sample_count_floor(f: BoundaryFunction) -> int:
    if f.kind == "samples":
        return 4 * int(f.sample_values.size)
    return 0


def _herglotz_indicator(arc: tuple[float, float], scale: float, z: complex) -> complex:
    """Closed-form mean of (e^it + z)/(e^it - z) scale over the arc.

    The antiderivative is scale (t - 2i log(1 - z e^{-it})) / (2 pi), and
    Re(1 - z e^{-it}) >= 1 - |z| > 0, so the principal branch is continuous
    along the arc and no unwinding is needed.  Quadrature would be the wrong
    tool here: the integrand jumps at the arc endpoints.
    """
    s, e = float(arc[0]), float(arc[1])
    e = min(e, s + TWO_PI)
    ws = cmath.log(1.0 - z * cmath.exp(-1j * s))
    we = cmath.log(1.0 - z * cmath.exp(-1j * e))
    return scale * ((e - s) - 2j * (we - ws)) / TWO_PI


def _adaptive_mean(
    integrand,
    start_points: int,
    tolerance: float,
    max_points: int,
) -> complex:
    """Double a uniform circle grid until the mean stabilizes within tolerance."""
    n = start_points
    prev = None
    while n <= max_points:
        t = TWO_PI * np.arange(n, dtype=np.float64) / n
        current = complex(np.mean(integrand(t)))
        if prev is not None and abs(current - prev) <= tolerance:
            return current
        prev = current
        n *= 2
    achieved = math.inf if prev is None else abs(current - prev)
    raise ResolutionError(
        f"quadrature did not stabilize within {tolerance:g} below {max_points} points "
        f"(last refinement moved {achieved:.3g})",
        achieved=achieved,
    )


def poisson_integral(
    f: BoundaryFunction,
    z: complex,
    quad_points: int | None = None,
    *,
    tolerance: float | None = None,
    max_points: int | None = None,
) -> complex:
    """Harmonic extension of f at z: mean of f(t) p_|z|(arg z - t).

    With quad_points given, the grid is fixed (must be >= 64 and >= 4x the
    sample count) and the result is cross-checked against a doubled grid when
    a tolerance is supplied.  Without quad_points the grid doubles until two
    refinements agree within the tolerance (default from config); arc
    indicators skip quadrature and integrate in closed form, since uniform
    grids cannot stabilize across a jump.
    """
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        raise ValidationError(f"Poisson integral needs |z| < 1, got |z| = {r}")
    if not isinstance(f, BoundaryFunction):
        raise ValidationError("boundary data must be a BoundaryFunction")
    theta = cmath.phase(z)
    tol = config.DEFAULTS["quad_tolerance"] if tolerance is None else tolerance
    cap = config.DEFAULTS["quad_max_points"] if max_points is None else max_points
    if quad_points is None and f.kind == "form" and f.form_name == "indicator-arc":
        return complex(_herglotz_indicator(f.arc, f.scale, z).real)

    def integrand(t: np.ndarray) -> np.ndarray:
        return f.evaluate(t) * poisson_kernel(r, theta - t)

    if quad_points is not None:
        floor = max(config.DEFAULTS["quad_min_points"], _sample_count_floor(f))
        if quad_points < floor:
            raise ValidationError(
                f"quad_points must be >= {floor} for this boundary data, got {quad_points}"
            )
        t = TWO_PI * np.arange(quad_points, dtype=np.float64) / quad_points
        value = complex(np.mean(integrand(t)))
        if tolerance is not None:
            t2 = TWO_PI * np.arange(2 * quad_points, dtype=np.float64) / (2 * quad_points)
            refined = complex(np.mean(integrand(t2)))
            if abs(refined - value) > tolerance:
                raise ResolutionError(
                    f"{quad_points}-point quadrature is {abs(refined - value):.3g} away "
                    f"from its refinement, above tolerance {tolerance:g}",
                    achieved=abs(refined - value),
                )
            return refined
        return value

    start = max(config.DEFAULTS["quad_min_points"], _sample_count_floor(f))
    return _adaptive_mean(integrand, start, tol, cap)


def kernel_mass(r: float, *, tolerance: float | None = None) -> float:
    """Mean of the Poisson kernel over the circle (should be 1)."""
    tol = config.DEFAULTS["quad_tolerance"] if tolerance is None else tolerance
    value = _adaptive_mean(
        lambda t: poisson_kernel(r, t) + 0.0j,
        config.DEFAULTS["quad_min_points"],
        tol,
        config.DEFAULTS["quad_max_points"],
    )
    return value.real


@dataclass(frozen=True)
class ApproxIdentityReport:
    """Approximate-identity numbers for p_r: total mass and tail sup."""

    r: float
    delta: float
    mass: float
    sup_outside_delta: float

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": self.delta,
            "mass": self.mass,
            "sup_outside_delta": self.sup_outside_delta,
        }


def approx_identity_report(r: float, delta: float) -> ApproxIdentityReport:
    """Mass by quadrature; tail sup = p_r(delta) since p_r decreases on (0, pi]."""
    if not (0.0 < delta <= math.pi):
        raise ValidationError(f"delta must lie in (0, pi], got {delta!r}")
    return ApproxIdentityReport(
        r=r,
        delta=delta,
        mass=kernel_mass(r),
        sup_outside_delta=float(poisson_kernel(r, delta)),
    )


def eval_singular_inner(atoms: SingularAtoms, z: complex) -> complex:
    """exp(-sum m_j (zeta_j + z)/(zeta_j - z)) for atoms (theta_j, m_j)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValidationError(f"singular inner functions are evaluated for |z| < 1, got {z!r}")
    expo = 0.0 + 0.0j
    for angle, mass in zip(atoms.angles, atoms.masses):
        zeta = cmath.exp(1j * angle)
        den = zeta - z
        if den == 0.0:
            raise PoleError(f"evaluation point {z!r} coincides with the atom at angle {angle}")
        expo -= mass * (zeta + z) / den
    return cmath.exp(expo)


def eval_outer(
    density: OuterDensity,
    z: complex,
    quad_points: int | None = None,
    *,
    tolerance: float | None = None,
    max_points: int | None = None,
) -> complex:
    """lambda * exp(mean of (e^it + z)/(e^it - z) k(t)); boundary modulus e^k."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValidationError(f"outer functions are evaluated for |z| < 1, got {z!r}")
    tol = config.DEFAULTS["quad_tolerance"] if tolerance is None else tolerance
    cap = config.DEFAULTS["quad_max_points"] if max_points is None else max_points
    if quad_points is None and density.k.kind == "form" and \
            density.k.form_name == "indicator-arc":
        mean = _herglotz_indicator(density.k.arc, density.k.scale, z)
        return density.lam * cmath.exp(mean)

    def integrand(t: np.ndarray) -> np.ndarray:
        zeta = np.exp(1j * t)
        return (zeta + z) / (zeta - z) * density.k.evaluate(t)

    if quad_points is not None:
        floor = max(config.DEFAULTS["quad_min_points"], _sample_count_floor(density.k))
        if quad_points < floor:
            raise ValidationError(
                f"quad_points must be >= {floor} for this density, got {quad_points}"
            )
        t = TWO_PI * np.arange(quad_points, dtype=np.float64) / quad_points
        mean = complex(np.mean(integrand(t)))
    else:
        start = max(config.DEFAULTS["quad_min_points"], _sample_count_floor(density.k))
        mean = _adaptive_mean(integrand, start, tol, cap)
    return density.lam * cmath.exp(mean)


@dataclass
class InnerFunctionSpec:
    """A bounded analytic function assembled from optional parts.

    The value at z is the product of the parts present: a Blaschke product
    over a zero sequence, a singular inner factor from atomic masses, an
    outer factor from a boundary log-modulus density, and a weighted series
    of such specs.  Inner-only specs (no outer part, series weight at most 1)
    are bounded by modulus 1 on the disc.
    """

    blaschke: "object | None" = None   # BlaschkeProduct
    atoms: SingularAtoms | None = None
    outer: OuterDensity | None = None
    series: "object | None" = None     # SeriesSpec

    def __post_init__(self) -> None:
        from .blaschke import BlaschkeProduct  # cycle-free at runtime

        if self.blaschke is not None and not isinstance(self.blaschke, BlaschkeProduct):
            raise ValidationError("field 'blaschke' must be a BlaschkeProduct")
        if self.atoms is not None and not isinstance(self.atoms, SingularAtoms):
            raise ValidationError("field 'atoms' must be SingularAtoms")
        if self.outer is not None and not isinstance(self.outer, OuterDensity):
            raise ValidationError("field 'outer' must be an OuterDensity")
        if self.series is not None:
            from .series import SeriesSpec

            if not isinstance(self.series, SeriesSpec):
                raise ValidationError("field 'series' must be a SeriesSpec")
        if all(part is None for part in (self.blaschke, self.atoms, self.outer, self.series)):
            raise ValidationError("inner-outer spec needs at least one part")

    def is_unit_bounded(self) -> bool:
        """True when the spec is certainly bounded by modulus 1 on the disc."""
        if self.outer is not None:
            return False
        if self.series is not None:
            from .series import SeriesSpec  # for type clarity only

            spec = self.series
            if spec.total_weight > 1.0 + 1e-12:
                return False
            if not all(term.component.is_unit_bounded() for term in spec.terms):
                return False
        return True

    def eval(self, z: complex, *, strict: bool = False) -> complex:
        value = 1.0 + 0.0j
        if self.blaschke is not None:
            if strict:
                value *= self.blaschke.eval(z)
            else:
                value *= self.blaschke.eval_best_effort(z).value
        if self.atoms is not None:
            value *= eval_singular_inner(self.atoms, z)
        if self.outer is not None:
            value *= eval_outer(self.outer, z)
        if self.series is not None:
            from .series import eval_series

            value *= eval_series(self.series, z).value
        return value

    def to_json(self) -> dict:
        return {
            "blaschke": None if self.blaschke is None else self.blaschke.zeros.to_json(),
            "atoms": None if self.atoms is None else self.atoms.to_json(),
            "outer": None if self.outer is None else self.outer.to_json(),
            "series": None if self.series is None else self.series.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "InnerFunctionSpec":
        if not isinstance(data, dict):
            raise ValidationError("inner-outer spec JSON must be an object")
        from .blaschke import BlaschkeProduct
        from .unitdisc import ZeroSequence

        blaschke = None
        if data.get("blaschke") is not None:
            blaschke = BlaschkeProduct(ZeroSequence.from_json(data["blaschke"]))
        atoms = None
        if data.get("atoms") is not None:
            atoms = SingularAtoms.from_json(data["atoms"])
        outer = None
        if data.get("outer") is not None:
            outer = OuterDensity.from_json(data["outer"])
        series = None
        if data.get("series") is not None:
            from .series import SeriesSpec

            series = SeriesSpec.from_json(data["series"])
        return cls(blaschke=blaschke, atoms=atoms, outer=outer, series=series)


def eval_inner_outer(spec: InnerFunctionSpec, z: complex) -> complex:
    """Product of the parts of an inner-outer spec at z."""
    if not isinstance(spec, InnerFunctionSpec):
        raise ValidationError("expected an InnerFunctionSpec")
    return spec.eval(z)
