"""Closed-system model catalog: energy levels, classical orbit periods, and
the resolvability criterion y(n) = |dE_n * dTau_n| against the hbar/2 bound.

Units: hbar = 1 throughout, so y is reported directly in units of hbar and
the threshold sits at 1/2. Each model carries its own scale constants; for
Box and Hydrogenoid those cancel out of y identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

__all__ = [
    "IndexOutOfSpectrum",
    "DegeneratePeriod",
    "NotNormalized",
    "Harmonic",
    "Box",
    "Hydrogenoid",
    "Morse",
    "Quartic",
    "ModelParams",
    "CriterionPoint",
    "SuperpositionSpec",
    "ScanResult",
    "RESOLVABLE_THRESHOLD",
    "min_index",
    "max_index",
    "criterion_min_index",
    "energy",
    "period",
    "criterion_point",
    "superposition_delta_e",
    "threshold_scan",
    "harmonic_dpdq",
    "quartic_limits",
]

# y must reach hbar/2 for the level spacing to be classically measurable.
RESOLVABLE_THRESHOLD = 0.5


class IndexOutOfSpectrum(ValueError):
    """Quantum number outside the model's bound spectrum."""


class DegeneratePeriod(ValueError):
    """The classical period does not depend on energy (harmonic oscillator),
    so period differences carry no level information: y(n) = 0 identically.
    """


class NotNormalized(ValueError):
    """Superposition amplitudes fail |a|^2 + |b|^2 = 1."""


def _require_positive(name: str, value: float) -> None:
    if not value > 0.0:
        raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class Harmonic:
    """E_n = omega (n + 1/2), period 2 pi / omega for every n."""

    mass: float
    omega: float

    def __post_init__(self) -> None:
        _require_positive("mass", self.mass)
        _require_positive("omega", self.omega)


@dataclass(frozen=True)
class Box:
    """Infinite well of the given width: E_n = n^2 pi^2 / (2 m a^2), n >= 1."""

    mass: float
    width: float

    def __post_init__(self) -> None:
        _require_positive("mass", self.mass)
        _require_positive("width", self.width)


@dataclass(frozen=True)
class Hydrogenoid:
    """Coulomb spectrum E_n = -mu Z^2 e^4 / (2 n^2) for s states, n >= 1."""

    reduced_mass: float = 1.0
    charge_number: int = 1
    charge: float = 1.0

    def __post_init__(self) -> None:
        _require_positive("reduced_mass", self.reduced_mass)
        if self.charge_number < 1:
            raise ValueError(f"charge_number must be at least 1, got {self.charge_number}")
        _require_positive("charge", self.charge)


@dataclass(frozen=True)
class Morse:
    """Morse well U(x) = depth (e^(-2 alpha x) - 2 e^(-alpha x)).

    E(n) = -depth + omega [(n + 1/2) - (n + 1/2)^2 / anharmonicity], valid
    while the levels still climb toward dissociation; the classical period
    at E(n) is 2 pi sqrt(mass r0^2 / (2 |E(n)| alpha^2)).

    r0 is an explicit input scale of the period formula (the bundled H2
    preset uses the equilibrium bond length). anharmonicity is the
    dimensionless well capacity, about 4 depth / omega for a fitted well.
    """

    depth: float
    alpha: float
    anharmonicity: float
    mass: float
    r0: float
    omega: float

    def __post_init__(self) -> None:
        _require_positive("depth", self.depth)
        _require_positive("alpha", self.alpha)
        _require_positive("anharmonicity", self.anharmonicity)
        _require_positive("mass", self.mass)
        _require_positive("r0", self.r0)
        _require_positive("omega", self.omega)


@dataclass(frozen=True)
class Quartic:
    """Kerr-type oscillator: E(n) = omega n + lam n^2 (hbar = 1)."""

    omega: float
    lam: float

    def __post_init__(self) -> None:
        _require_positive("omega", self.omega)
        if self.lam < 0.0:
            raise ValueError(f"lam must be non-negative, got {self.lam}")


ModelParams = Union[Harmonic, Box, Hydrogenoid, Morse, Quartic]


@dataclass(frozen=True)
class CriterionPoint:
    """One scan row: level data, neighbor half-differences, and the verdict.

    d_energy = (E_n - E_{n-1}) / 2, d_tau = (tau_n - tau_{n-1}) / 2,
    y = |d_energy * d_tau| in units of hbar, resolvable iff y >= 1/2.
    """

    n: int
    energy: float
    tau: float
    d_energy: float
    d_tau: float
    y: float
    resolvable: bool


@dataclass(frozen=True)
class SuperpositionSpec:
    """Two-level superposition a|E_n> + b|E_{n-1}>; must be normalized."""

    a: complex
    b: complex
    n: int

    def __post_init__(self) -> None:
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise NotNormalized(f"|a|^2 + |b|^2 = {norm!r}, expected 1")


@dataclass(frozen=True)
class ScanResult:
    points: tuple[CriterionPoint, ...]
    first_unresolvable: int | None
    note: str


def min_index(model: ModelParams) -> int:
    """Smallest valid quantum number of the model's spectrum."""
    if isinstance(model, (Box, Hydrogenoid)):
        return 1
    return 0


def max_index(model: ModelParams) -> int | None:
    """Largest bound index, or None for an unbounded spectrum.

    Only the Morse well has a ceiling: levels are kept while they still
    climb (d E / d n > 0, i.e. n + 1/2 < anharmonicity / 2) and stay below
    dissociation (E(n) < 0).
    """
    if not isinstance(model, Morse):
        return None
    n_top = math.ceil((model.anharmonicity - 1.0) / 2.0) - 1
    while n_top >= 0 and _morse_energy(model, n_top) >= 0.0:
        n_top -= 1
    if n_top < 0:
        raise IndexOutOfSpectrum("Morse well too shallow to hold any level")
    return n_top


def _check_index(model: ModelParams, n: int) -> None:
    lo = min_index(model)
    if n < lo:
        raise IndexOutOfSpectrum(f"n={n} below the first level n={lo} of {type(model).__name__}")
    hi = max_index(model)
    if hi is not None and n > hi:
        raise IndexOutOfSpectrum(
            f"n={n} lies past the top of the {type(model).__name__} well (last bound level n={hi})"
        )


def _morse_energy(model: Morse, n: int) -> float:
    v = n + 0.5
    return -model.depth + model.omega * (v - v * v / model.anharmonicity)


def energy(model: ModelParams, n: int) -> float:
    """Eigenvalue E_n of the model (hbar = 1)."""
    _check_index(model, n)
    if isinstance(model, Harmonic):
        return model.omega * (n + 0.5)
    if isinstance(model, Box):
        return (n * n * math.pi**2) / (2.0 * model.mass * model.width**2)
    if isinstance(model, Hydrogenoid):
        mu_z2_e4 = model.reduced_mass * model.charge_number**2 * model.charge**4
        return -mu_z2_e4 / (2.0 * n * n)
    if isinstance(model, Morse):
        return _morse_energy(model, n)
    if isinstance(model, Quartic):
        return model.omega * n + model.lam * n * n
    raise TypeError(f"unknown model {model!r}")


def period(model: ModelParams, n: int) -> float:
    """Classical orbit period at energy E_n.

    Harmonic: 2 pi / omega, independent of n. Box: 2 a^2 m / (n pi).
    Hydrogenoid: the Kepler period 2 pi n^3 / (mu Z^2 e^4), the unique
    period whose half-differences match the Coulomb level analysis and
    which vanishes as E -> -infinity. Morse: 2 pi sqrt(m r0^2 /
    (2 |E(n)| alpha^2)). Quartic: 2 pi / (omega + 2 lam n).
    """
    _check_index(model, n)
    if isinstance(model, Harmonic):
        return 2.0 * math.pi / model.omega
    if isinstance(model, Box):
        return 2.0 * model.mass * model.width**2 / (n * math.pi)
    if isinstance(model, Hydrogenoid):
        mu_z2_e4 = model.reduced_mass * model.charge_number**2 * model.charge**4
        return 2.0 * math.pi * n**3 / mu_z2_e4
    if isinstance(model, Morse):
        e_n = _morse_energy(model, n)
        return 2.0 * math.pi * math.sqrt(
            model.mass * model.r0**2 / (2.0 * abs(e_n) * model.alpha**2)
        )
    if isinstance(model, Quartic):
        return 2.0 * math.pi / (model.omega + 2.0 * model.lam * n)
    raise TypeError(f"unknown model {model!r}")


def criterion_min_index(model: ModelParams) -> int:
    """Smallest n for which the criterion has a lower neighbor."""
    return min_index(model) + 1


def criterion_point(model: ModelParams, n: int) -> CriterionPoint:
    """Evaluate the resolvability criterion at level n from raw differences.

    Raises DegeneratePeriod for the harmonic oscillator, whose period-based
    criterion is identically zero and therefore says nothing about the
    spectrum (a different verdict than merely y < 1/2).
    """
    if isinstance(model, Harmonic):
        raise DegeneratePeriod(
            "harmonic period is energy independent: dTau = 0 for every n, "
            "the period cannot probe this spectrum"
        )
    if n < criterion_min_index(model):
        raise IndexOutOfSpectrum(
            f"criterion needs a lower neighbor: n must be >= {criterion_min_index(model)}"
        )
    e_hi, e_lo = energy(model, n), energy(model, n - 1)
    t_hi, t_lo = period(model, n), period(model, n - 1)
    d_energy = (e_hi - e_lo) / 2.0
    d_tau = (t_hi - t_lo) / 2.0
    y = abs(d_energy * d_tau)
    return CriterionPoint(
        n=n,
        energy=e_hi,
        tau=t_hi,
        d_energy=d_energy,
        d_tau=d_tau,
        y=y,
        resolvable=y >= RESOLVABLE_THRESHOLD,
    )


def superposition_delta_e(model: ModelParams, spec: SuperpositionSpec) -> float:
    """Energy spread |a||b| (E_n - E_{n-1}) of a two-neighbor superposition.

    Maximal, at half the level gap, for |a| = |b| = 1/sqrt(2).
    """
    norm = abs(spec.a) ** 2 + abs(spec.b) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise NotNormalized(f"|a|^2 + |b|^2 = {norm!r}, expected 1")
    if spec.n < min_index(model) + 1:
        raise IndexOutOfSpectrum(f"n={spec.n} has no lower neighbor in {type(model).__name__}")
    gap = energy(model, spec.n) - energy(model, spec.n - 1)
    return abs(spec.a) * abs(spec.b) * gap


def threshold_scan(model: ModelParams, n_min: int, n_max: int) -> ScanResult:
    """Criterion rows for n_min..n_max plus the first level with y < 1/2.

    No monotonicity is assumed: the note lists every crossing of the
    threshold within the scanned range, in both directions.
    """
    if n_min > n_max:
        raise ValueError(f"empty scan range [{n_min}, {n_max}]")
    if n_min < criterion_min_index(model):
        raise IndexOutOfSpectrum(
            f"scan must start at n >= {criterion_min_index(model)} for {type(model).__name__}"
        )
    points = tuple(criterion_point(model, n) for n in range(n_min, n_max + 1))
    first = next((p.n for p in points if not p.resolvable), None)
    notes = []
    if first is None:
        notes.append(f"every scanned level up to n={n_max} is resolvable (y >= 1/2)")
    else:
        at = next(p for p in points if p.n == first)
        notes.append(f"first unresolvable level: n={first} (y={at.y:.6g})")
        if first > n_min:
            below = next(p for p in points if p.n == first - 1)
            notes.append(f"n={first - 1} is still resolvable (y={below.y:.6g})")
    flips = [
        f"n={q.n}: y {'rises above' if q.resolvable else 'falls below'} 1/2 (y={q.y:.6g})"
        for p, q in zip(points, points[1:])
        if p.resolvable != q.resolvable
    ]
    notes.extend(flips[1:] if first is not None and first > n_min else flips)
    return ScanResult(points=points, first_unresolvable=first, note="; ".join(notes))


def harmonic_dpdq(model: Harmonic, n: int, q: float, p: float) -> float:
    """Joint (q, p) resolution needed to pin E_n of the harmonic oscillator.

    dp dq = 1 / (4 (n + 1/2 + |p q|)) in hbar units; compare with 1/2.
    A point (q, p) on or near the classical orbit of E_n is assumed, not
    enforced.
    """
    if not isinstance(model, Harmonic):
        raise TypeError("harmonic_dpdq applies to the Harmonic model only")
    _check_index(model, n)
    return 0.25 / (n + 0.5 + abs(p * q))


def quartic_limits(model: Quartic, n: int) -> tuple[float, float]:
    """Asymptotes of y(n) for the quartic model, for diagnostic display.

    Returns (weak-nonlinearity limit pi lam / omega, strong-nonlinearity
    limit pi (2n - 1) / (4 (n - 1) n)); the latter coincides with the Box
    closed form.
    """
    if not isinstance(model, Quartic):
        raise TypeError("quartic_limits applies to the Quartic model only")
    if n < 2:
        raise IndexOutOfSpectrum(f"limits need n >= 2, got {n}")
    low_nl = math.pi * model.lam / model.omega
    high_nl = math.pi * (2 * n - 1) / (4.0 * (n - 1) * n)
    return low_nl, high_nl
