"""Derived time-dependent quantities of the diffusive Fock mixtures:
neighbor fidelity, survival probability, level and energy averages, and the
environment-averaged resolvability criterion <y(b)>.

All series run over the dimensionless time kappa*t; <y(b)> is reported in
units of hbar so the measurability threshold sits at 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .numerics import kernel, log_factorial, sum_adaptive
from .open_system import DiffusiveConfig, distribution, fock_weight

__all__ = [
    "MismatchedConfig",
    "ZeroEnergy",
    "TimeSeries",
    "YMeanPoint",
    "fidelity_overlap",
    "fidelity_closed_form",
    "survival",
    "mean_n",
    "mean_h0",
    "mean_tau",
    "mean_y_point",
    "mean_y_series",
    "log_grid",
]


class MismatchedConfig(ValueError):
    """Two configurations that must share kappa, omega, lam do not."""


class ZeroEnergy(ArithmeticError):
    """<H0> vanishes (b = 0 at t = 0, or omega = lam = 0), so the
    period estimate 2 pi <N> / <H0> is undefined."""


@dataclass(frozen=True)
class TimeSeries:
    """A labeled (kappa*t -> value) table; kt strictly increasing."""

    label: str
    kt: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.kt.shape != self.values.shape:
            raise ValueError("kt and values must have matching shapes")
        if self.kt.size and not np.all(np.diff(self.kt) > 0.0):
            raise ValueError("kt grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("series values must be finite")

    def points(self) -> Iterator[tuple[float, float]]:
        return zip(self.kt.tolist(), self.values.tolist())


@dataclass(frozen=True)
class YMeanPoint:
    """One <y(b)> evaluation with its ingredients.

    d_energy = (<H0(b)> - <H0(b-1)>) / 2 and d_tau = (<tau_b> - <tau_{b-1}>) / 2
    keep their signs (d_tau is negative here: the heavier mixture runs
    faster); y_mean = |d_energy * d_tau| in units of hbar.
    """

    kt: float
    mean_n_b: float
    mean_n_bm1: float
    mean_h0_b: float
    mean_h0_bm1: float
    mean_tau_b: float
    mean_tau_bm1: float
    d_energy: float
    d_tau: float
    y_mean: float


def log_grid(start: float = 1e-3, stop: float = 1e2, points: int = 200) -> np.ndarray:
    """Default log-spaced kappa*t grid matching the figure convention."""
    if not (start > 0.0 and stop > start and points >= 2):
        raise ValueError(f"bad log grid ({start}, {stop}, {points})")
    return np.logspace(math.log10(start), math.log10(stop), points)


def _require_same_bath(cfg_b: DiffusiveConfig, cfg_bm1: DiffusiveConfig) -> None:
    if (cfg_b.kappa, cfg_b.omega, cfg_b.lam) != (cfg_bm1.kappa, cfg_bm1.omega, cfg_bm1.lam):
        raise MismatchedConfig(
            "fidelity compares preparations under the same bath and oscillator: "
            f"(kappa, omega, lam) differ: {cfg_b} vs {cfg_bm1}"
        )
    if cfg_bm1.b != cfg_b.b - 1:
        raise MismatchedConfig(f"expected neighboring indices, got b={cfg_b.b} and {cfg_bm1.b}")


def fidelity_overlap(cfg_b: DiffusiveConfig, cfg_bm1: DiffusiveConfig, t: float) -> float:
    """F(b, t) = Tr[rho(t, b) rho(t, b-1)] via the diagonal overlap.

    Both states are diagonal in the Fock basis, so the trace is the plain
    overlap sum_n P_b(n, t) P_{b-1}(n, t). This is the ground-truth form;
    fidelity_closed_form exists to audit the expanded triple sum against it.
    The discarded tail is bounded by the smaller of the two distribution
    tails, since every weight is at most 1.
    """
    _require_same_bath(cfg_b, cfg_bm1)
    if cfg_bm1.b < 0:
        raise ValueError("fidelity needs b >= 1")
    da = distribution(cfg_b, t)
    db = distribution(cfg_bm1, t)
    m = min(da.weights.shape[0], db.weights.shape[0])
    return float(da.weights[:m] @ db.weights[:m])


def fidelity_closed_form(cfg_b: DiffusiveConfig, t: float) -> float:
    """Expanded triple-sum form of F(b, t), summed adaptively over l.

    Implements the explicit (l, p, p') expansion with weight

        b! (b-1)! ((p+l)!)^2
        ------------------------------------------------------------
        (p'!)^2 (p!)^2 l! (b-p)! (p+l-p')! (b-p'-1)!

    and kernel powers gamma^(2b+2l-2p'-1) zeta^(2(p+p')+2), all in log
    space. Kept as an audit target for fidelity_overlap.
    """
    b = cfg_b.b
    if b < 1:
        raise ValueError("fidelity needs b >= 1")
    if t < 0.0:
        raise ValueError(f"t must be non-negative, got {t}")
    kv = kernel(0, t, cfg_b.kappa, cfg_b.lam)
    g, z = kv.gamma.real, kv.zeta.real
    if g == 0.0:
        return 0.0
    lg, lz = math.log(g), math.log(z)
    lf = log_factorial

    def l_terms() -> Iterator[float]:
        l = 0
        while True:
            acc = 0.0
            for p in range(0, b + 1):
                for pp in range(0, min(b - 1, p + l) + 1):
                    acc += math.exp(
                        lf(b) + lf(b - 1) + 2.0 * lf(p + l)
                        - 2.0 * lf(pp) - 2.0 * lf(p) - lf(l) - lf(b - p)
                        - lf(p + l - pp) - lf(b - pp - 1)
                        + (2 * b + 2 * l - 2 * pp - 1) * lg
                        + (2 * (p + pp) + 2) * lz
                    )
            yield acc
            l += 1

    return float(sum_adaptive(l_terms(), cfg_b.tol).value)


def survival(cfg: DiffusiveConfig, t: float) -> float:
    """Probability P_b(b, t) of still finding the prepared index b."""
    return fock_weight(cfg, cfg.b, t)


def _moments(cfg: DiffusiveConfig, t: float) -> tuple[float, float]:
    dist = distribution(cfg, t)
    _, m1, m2 = dist.moments()
    return m1, m2


def mean_n(cfg: DiffusiveConfig, t: float) -> float:
    """<N>(t) = sum_n n P_b(n, t), with the tail certified by distribution()."""
    return _moments(cfg, t)[0]


def mean_h0(cfg: DiffusiveConfig, t: float) -> float:
    """<H0>(t) = sum_n (omega n + lam n^2) P_b(n, t) (hbar = 1)."""
    m1, m2 = _moments(cfg, t)
    return cfg.omega * m1 + cfg.lam * m2


def mean_tau(cfg: DiffusiveConfig, t: float) -> float:
    """Period estimate 2 pi <N> / <H0> of the evolved mixture.

    Raises ZeroEnergy when <H0> = 0 (b = 0 at t = 0), rather than returning
    a NaN. Note the t -> 0 limit for b >= 1 is 2 pi / (omega + lam b), which
    differs from the closed-system orbit period 2 pi / (omega + 2 lam b):
    the moment ratio is an approximation and both values are intentionally
    reported by the CLI rather than reconciled.
    """
    m1, m2 = _moments(cfg, t)
    h0 = cfg.omega * m1 + cfg.lam * m2
    if h0 == 0.0:
        raise ZeroEnergy(f"<H0> = 0 for b={cfg.b}, t={t}; period estimate undefined")
    return 2.0 * math.pi * m1 / h0


def mean_y_point(cfg_b: DiffusiveConfig, t: float) -> YMeanPoint:
    """<y(b)> at one time from the b and b-1 mixtures.

    <y(b)> = |<dE_b> <dTau_b>| with <dE_b> = (<H0(b)> - <H0(b-1)>)/2 and
    <dTau_b> = (<tau_b> - <tau_{b-1}>)/2. The absolute value matches the
    closed-system criterion convention; the signed factors are retained in
    the returned record.
    """
    if cfg_b.b < 1:
        raise ValueError("mean_y_point needs b >= 1")
    cfg_bm1 = DiffusiveConfig(
        b=cfg_b.b - 1, kappa=cfg_b.kappa, omega=cfg_b.omega, lam=cfg_b.lam, tol=cfg_b.tol
    )
    m1_b, m2_b = _moments(cfg_b, t)
    m1_m, m2_m = _moments(cfg_bm1, t)
    h0_b = cfg_b.omega * m1_b + cfg_b.lam * m2_b
    h0_m = cfg_b.omega * m1_m + cfg_b.lam * m2_m
    if h0_b == 0.0 or h0_m == 0.0:
        raise ZeroEnergy(f"<H0> = 0 at t={t}; cannot form the period estimate")
    tau_b = 2.0 * math.pi * m1_b / h0_b
    tau_m = 2.0 * math.pi * m1_m / h0_m
    d_energy = (h0_b - h0_m) / 2.0
    d_tau = (tau_b - tau_m) / 2.0
    return YMeanPoint(
        kt=cfg_b.kappa * t,
        mean_n_b=m1_b,
        mean_n_bm1=m1_m,
        mean_h0_b=h0_b,
        mean_h0_bm1=h0_m,
        mean_tau_b=tau_b,
        mean_tau_bm1=tau_m,
        d_energy=d_energy,
        d_tau=d_tau,
        y_mean=abs(d_energy * d_tau),
    )


def mean_y_series(cfg_b: DiffusiveConfig, kt_grid: Sequence[float] | np.ndarray) -> list[YMeanPoint]:
    """<y(b)> along a strictly increasing kappa*t grid."""
    grid = np.asarray(kt_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("kt_grid must be a non-empty 1-d sequence")
    if not np.all(np.diff(grid) > 0.0):
        raise ValueError("kt_grid must be strictly increasing")
    return [mean_y_point(cfg_b, kt / cfg_b.kappa) for kt in grid.tolist()]
