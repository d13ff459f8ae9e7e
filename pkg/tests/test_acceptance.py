"""Acceptance gate: one test per release criterion, each printing a PASS or
FAIL line with the measured numbers.

Run with `pytest tests/test_acceptance.py -v -s` to see every line; without
-s the lines still appear for any failing criterion.
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest

from levelscope import presets
from levelscope.observables import (
    fidelity_closed_form,
    fidelity_overlap,
    log_grid,
    mean_y_point,
    survival,
)
from levelscope.open_system import DiffusiveConfig, distribution, fock_weight
from levelscope.open_system import _weights_cached
from levelscope.spectra import (
    Box,
    Hydrogenoid,
    Quartic,
    criterion_point,
    max_index,
    quartic_limits,
    threshold_scan,
)

mp.mp.dps = 50


def report(tag: str, ok: bool, detail: str) -> bool:
    print(f"[{tag}] {'PASS' if ok else 'FAIL'} {detail}")
    return ok


def hydrogenoid_closed_y(n: int) -> float:
    return math.pi * (2 * n - 1) * (3 * n * n - 3 * n + 1) / (4.0 * n * n * (n - 1) ** 2)


def weight_oracle(b: int, n: int, kt) -> float:
    kt = mp.mpf(kt)
    gamma = 2 * kt / (1 + 2 * kt)
    zeta = 1 / (1 + 2 * kt)
    total = mp.mpf(0)
    for p in range(0, min(b, n) + 1):
        l = n - p
        coeff = (
            mp.factorial(b)
            * mp.factorial(p + l)
            / (mp.factorial(p) ** 2 * mp.factorial(l) * mp.factorial(b - p))
        )
        total += coeff * gamma ** (b + l - p) * zeta ** (2 * p + 1)
    return float(total)


def test_a01_box_threshold():
    started = time.perf_counter()
    result = threshold_scan(Box(mass=1.0, width=1.0), 2, 50)
    elapsed = time.perf_counter() - started
    by_n = {p.n: p for p in result.points}
    y4_expected = (math.pi / 4.0) * (7.0 / 12.0)
    rel_err = abs(by_n[4].y - y4_expected) / y4_expected
    ok = (
        by_n[3].y >= 0.5
        and by_n[4].y < 0.5
        and result.first_unresolvable == 4
        and rel_err <= 1e-12
        and elapsed < 1.0
    )
    assert report(
        "A01",
        ok,
        f"box threshold: y(3)={by_n[3].y:.6f}, y(4)={by_n[4].y:.15f} "
        f"(closed-form rel err {rel_err:.2e}), first_unresolvable="
        f"{result.first_unresolvable}, {elapsed:.3f} s",
    )


def test_a02_hydrogenoid_threshold():
    result = threshold_scan(Hydrogenoid(), 2, 50)
    y9 = next(p.y for p in result.points if p.n == 9)
    y10 = next(p.y for p in result.points if p.n == 10)
    worst = 0.0
    for n in range(2, 101):
        got = criterion_point(Hydrogenoid(), n).y
        want = hydrogenoid_closed_y(n)
        worst = max(worst, abs(got - want) / want)
    crossing_reported = result.first_unresolvable == 10
    note_emitted = "n=9" in result.note and "n=10" in result.note
    ok = crossing_reported and note_emitted and y9 > 0.5 > y10 and worst <= 1e-10
    assert report(
        "A02",
        ok,
        f"hydrogenoid threshold: first crossing n={result.first_unresolvable} "
        f"(y(9)={y9:.4f} still above 1/2, y(10)={y10:.4f} below), note emitted; "
        f"closed form vs differences max rel err {worst:.2e} for n=2..100",
    )


def test_a03_quartic_limits():
    worst_low = worst_high = 0.0
    identical = True
    for n in range(2, 11):
        weak = Quartic(omega=1.0, lam=1e-6)
        low_nl, _ = quartic_limits(weak, n)
        worst_low = max(worst_low, abs(criterion_point(weak, n).y - low_nl) / low_nl)
        strong = Quartic(omega=1e-6, lam=1.0)
        _, high_nl = quartic_limits(strong, n)
        worst_high = max(worst_high, abs(criterion_point(strong, n).y - high_nl) / high_nl)
        box_form = math.pi * (2 * n - 1) / (4.0 * (n - 1) * n)
        identical = identical and (high_nl == box_form)
    ok = worst_low <= 1e-4 and worst_high <= 1e-4 and identical
    assert report(
        "A03",
        ok,
        f"quartic asymptotes: weak-coupling rel err {worst_low:.2e}, "
        f"strong-coupling rel err {worst_high:.2e} (n=2..10); "
        f"strong limit == box closed form: {identical}",
    )


def test_a04_morse_preset_all_levels_unresolvable():
    model = presets.load_model("h2_morse")
    top = max_index(model)
    result = threshold_scan(model, 1, top)
    offenders = [(p.n, p.y) for p in result.points if p.resolvable]
    detail = ", ".join(f"y({n})={y:.3f}" for n, y in offenders) or "none"
    ok = not offenders
    assert report(
        "A04",
        ok,
        f"morse H2 preset, bound levels n=1..{top}: resolvable levels: {detail} "
        "(criterion demands every bound level below 1/2; the classical period "
        "diverges at the dissociation edge, so the top-of-well levels exceed it)",
    ), (
        "the all-n property fails at the top of the Morse well, where the "
        f"classical period diverges: {detail}"
    )


def test_a05_trace_normalization():
    _weights_cached.cache_clear()
    started = time.perf_counter()
    worst = 0.0
    grid = log_grid(1e-3, 1e2, 25)
    for b in (0, 1, 2, 5, 10, 15):
        cfg = DiffusiveConfig(b=b, kappa=1.0)
        for kt in grid.tolist():
            worst = max(worst, abs(distribution(cfg, kt).trace() - 1.0))
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-8 and elapsed < 10.0
    assert report(
        "A05",
        ok,
        f"trace normalization: max |trace - 1| = {worst:.2e} over 6 b values x "
        f"25 kt points, {elapsed:.2f} s",
    )


def test_a06_oracle_equivalence():
    worst = 0.0
    for b in range(0, 6):
        cfg = DiffusiveConfig(b=b, kappa=1.0)
        for kt in (0.01, 0.1, 1.0):
            for n in range(0, 21):
                got = fock_weight(cfg, n, kt)
                want = weight_oracle(b, n, kt)
                worst = max(worst, abs(got - want) / want)
    ok = worst <= 1e-10
    assert report(
        "A06",
        ok,
        f"oracle equivalence: log-space weights vs 50-digit direct sum, "
        f"max rel err {worst:.2e} (b<=5, n<=20, kt in 0.01/0.1/1)",
    )


def test_a07_fidelity_audit():
    worst = 0.0
    in_bounds = True
    zero_at_start = True
    for b in (1, 2, 3):
        cfg = DiffusiveConfig(b=b, kappa=1.0)
        lower = DiffusiveConfig(b=b - 1, kappa=1.0)
        zero_at_start = zero_at_start and fidelity_overlap(cfg, lower, 0.0) == 0.0
        for kt in (0.01, 0.1, 1.0, 10.0):
            overlap = fidelity_overlap(cfg, lower, kt)
            closed = fidelity_closed_form(cfg, kt)
            in_bounds = in_bounds and 0.0 <= overlap <= 1.0
            worst = max(worst, abs(closed - overlap))
    matches = worst <= 1e-8
    verdict = (
        "printed triple sum (with the (p!)^2 l! factorial reading) matches the "
        "trace overlap" if matches else "printed triple sum DISAGREES with the "
        "trace overlap; overlap form is authoritative"
    )
    ok = in_bounds and zero_at_start and matches
    assert report(
        "A07",
        ok,
        f"fidelity audit: F in [0,1]: {in_bounds}, F(b,0)=0 exactly: "
        f"{zero_at_start}, max |closed - overlap| = {worst:.2e} -> {verdict}",
    )


def test_a08_survival_ordering():
    ok = True
    worst_pair = ""
    for kt in np.logspace(-2, 0, 9).tolist():
        values = [survival(DiffusiveConfig(b=b, kappa=1.0), kt) for b in (1, 5, 10, 15)]
        if not all(a >= b for a, b in zip(values, values[1:])):
            ok = False
            worst_pair = f"violated at kt={kt:.3g}: {values}"
    assert report(
        "A08",
        ok,
        "survival ordering: P_b(b,t) non-increasing across b in (1,5,10,15) "
        f"for kt in [1e-2, 1] {worst_pair}",
    )


def test_a09_discreteness_lifetime_window():
    _weights_cached.cache_clear()
    started = time.perf_counter()
    grid = log_grid()  # the full 200-point figure grid
    offenders = []
    scales = []
    for ratio in (0.10, 10.0):
        for b in (2, 5, 10, 15):
            cfg = DiffusiveConfig(b=b, kappa=1.0, omega=ratio, lam=1.0)
            values = np.array([mean_y_point(cfg, kt).y_mean for kt in grid.tolist()])
            half = values[0] / 2.0
            below = np.nonzero(values <= half)[0]
            if below.size == 0:
                crossing = math.inf
            else:
                j = below[0]
                if j == 0:
                    crossing = grid[0]
                else:
                    # log-linear interpolation between the bracketing points
                    f = (math.log(half) - math.log(values[j - 1])) / (
                        math.log(values[j]) - math.log(values[j - 1])
                    )
                    crossing = grid[j - 1] * (grid[j] / grid[j - 1]) ** f
            scales.append(f"(b={b}, omega/lam={ratio}): kt_1/2={crossing:.3g}")
            if not 0.1 <= crossing <= 10.0:
                offenders.append(scales[-1])
    elapsed = time.perf_counter() - started
    ok = not offenders and elapsed < 60.0
    assert report(
        "A09",
        ok,
        f"discreteness lifetime: half-decay scales {'; '.join(scales)}; "
        f"window [0.1, 10] violated by: {offenders or 'none'}; full curve "
        f"families generated in {elapsed:.2f} s",
    ), (
        "half-decay of <y(b)> leaves the [0.1, 10] window in the "
        f"near-harmonic corner, where it starts small and decays like "
        f"1/(kappa t): {offenders}"
    )


def test_a10_closed_system_consistency():
    worst = 0.0
    for ratio in (0.10, 10.0):
        for b in (2, 5, 10, 15):
            cfg = DiffusiveConfig(b=b, kappa=1.0, omega=ratio, lam=1.0)
            point = mean_y_point(cfg, 1e-6)
            closed = (ratio + (2 * b - 1)) / 2.0
            worst = max(worst, abs(point.d_energy - closed) / closed)
    ok = worst <= 1e-3
    assert report(
        "A10",
        ok,
        f"closed-system consistency at kt=1e-6: <dE_b> vs half level gap, "
        f"max rel err {worst:.2e}",
    )
