"""Acceptance suite: one test per release criterion, each printing a verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every tolerance is pinned here; nothing is deferred to later
calibration.  Criterion 7 compares the leading-order MI variance against a
Monte-Carlo estimate at a tolerance that the truncated expansion cannot
meet at this sample size; it is implemented faithfully and reports its
numbers honestly (see the repository notes for the analysis).
"""

import json
import math
import time
from fractions import Fraction

import numpy as np

from idmbounds import (
    ContingencyCounts,
    CountVector,
    EntropyKernel,
    GridSpec,
    IdmConfig,
    McSpec,
    SimplexPoint,
    concave_remainder_bounds,
    digamma,
    dirichlet_draws,
    entropy_interval_exact,
    entropy_summand,
    grid_extrema,
    h,
    h_fraction,
    jackknife_variance_stderr,
    kappa_from_alpha,
    lattice_entropy_objective,
    lattice_mi_objective,
    max_concave_sum,
    mi_interval_bounds,
    mi_interval_crude,
    mi_variance_leading,
    min_concave_sum,
    product_grid_extrema,
    triangular_mass,
    triangular_minimal_robust,
    triangular_robust_union,
    triangular_shortest_interval,
    trigamma,
)
from idmbounds.cli import main as cli_main
from _helpers import (
    harmonic_exact,
    inverse_squares_exact,
    mi_objective_direct,
    mutual_information_of_chances,
)


def _verdict(num: int, ok: bool, detail: str = "") -> None:
    print(f"[acceptance] criterion {num:02d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_exact_worked_example_and_latency():
    counts = CountVector([3, 6])
    cfg = IdmConfig(1.0)
    kernel = EntropyKernel(10.0)

    checks = []
    for numer, expected in (
        (3, Fraction(2761, 8400)),
        (4, Fraction(2131, 6300)),
        (6, Fraction(1207, 4200)),
        (7, Fraction(847, 3600)),
    ):
        checks.append(h_fraction(numer, 10) == expected)
        checks.append(abs(h(numer / 10, kernel) - float(expected)) <= 1e-12)

    iv = entropy_interval_exact(counts, cfg)
    checks.append(abs(iv.lower - float(Fraction(7106, 12600))) <= 1e-12)
    checks.append(abs(iv.upper - float(Fraction(7883, 12600))) <= 1e-12)
    checks.append(abs(iv.width - float(Fraction(37, 600))) <= 1e-12)

    entropy_interval_exact(counts, cfg)  # warm caches before timing
    elapsed = min(
        _timed(lambda: entropy_interval_exact(counts, cfg)) for _ in range(20)
    )
    checks.append(elapsed < 1e-3)
    _verdict(1, all(checks), f"interval={iv}, runtime={elapsed * 1e3:.3f} ms")


def _timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_02_first_order_worked_example():
    counts = CountVector([3, 6])
    cfg = IdmConfig(1.0)
    est = concave_remainder_bounds(counts, cfg, entropy_summand(EntropyKernel(10.0)))
    exact = entropy_interval_exact(counts, cfg)

    r_ub_expected = 0.1 * (float(Fraction(13051, 2520)) - math.pi**2 / 2)
    r_lb_expected = 0.1 * (float(Fraction(91717, 8400)) - 7 * math.pi**2 / 6)
    checks = [
        abs(est.f0 - float(Fraction(69, 112))) <= 1e-12,
        abs(est.r_ub - r_ub_expected) <= 1e-12,
        abs(est.r_lb - r_lb_expected) <= 1e-12,
        abs((est.f0 + est.r_lb) - 0.5564) <= 2e-4,
        abs((est.f0 + est.r_ub) - 0.6404) <= 2e-4,
        abs((est.f0 + est.r_ub - exact.upper) - 0.0148) <= 2e-4,
        abs((exact.lower - est.f0 - est.r_lb) - 0.0074) <= 2e-4,
    ]
    _verdict(
        2,
        all(checks),
        f"conservative=[{est.f0 + est.r_lb:.6f}, {est.f0 + est.r_ub:.6f}]",
    )


def test_criterion_03_oracle_containment_suite():
    rng = np.random.default_rng(20260703)
    cases = []
    for _ in range(200):
        d = int(rng.integers(1, 5))
        counts = rng.integers(0, 21, size=d).astype(float)
        s = float(rng.choice([1.0, 2.0]))
        cases.append((d, counts, s))
    cases.sort(key=lambda c: c[0])  # group by dimension to reuse the lattice cache

    grid = GridSpec(400)
    t0 = time.perf_counter()
    worst_gap = 0.0
    contained = 0
    for d, raw, s in cases:
        counts = CountVector(raw)
        cfg = IdmConfig(s)
        kernel = EntropyKernel(counts.total + cfg.s)
        f = entropy_summand(kernel)
        lo = min_concave_sum(counts, cfg, f).value
        hi = max_concave_sum(counts, cfg, f).value
        est = concave_remainder_bounds(counts, cfg, f)
        oracle = grid_extrema(
            lattice_entropy_objective(counts, cfg, grid), counts, cfg, grid, on_lattice=True
        )
        worst_gap = max(worst_gap, abs(lo - oracle.lower), abs(hi - oracle.upper))
        if (
            est.f0 + est.r_lb <= oracle.lower + 1e-9
            and oracle.upper <= est.f0 + est.r_ub + 1e-9
        ):
            contained += 1
    elapsed = time.perf_counter() - t0
    ok = worst_gap <= 5e-3 and contained == 200 and elapsed < 60.0
    _verdict(
        3,
        ok,
        f"worst extremum gap={worst_gap:.2e}, containment={contained}/200, "
        f"runtime={elapsed:.1f} s",
    )


def test_criterion_04_quadratic_shrinkage():
    ratios = np.array([1.0, 2.0]) / 3.0
    cfg = IdmConfig(1.0)
    widths = []
    for n in (8, 16, 32, 64):
        counts = CountVector(ratios * n)
        kernel = EntropyKernel(counts.total + cfg.s)
        est = concave_remainder_bounds(counts, cfg, entropy_summand(kernel))
        widths.append((est.f0 + est.r_ub) - est.inner_upper)
    factors = [b / a for a, b in zip(widths, widths[1:])]
    ok = all(f <= 0.35 for f in factors)
    _verdict(4, ok, f"widenings={['%.2e' % w for w in widths]}, factors={factors}")


def test_criterion_05_mi_bounds_suite():
    rng = np.random.default_rng(20260705)
    cfg = IdmConfig(1.0)
    cases = []
    while len(cases) < 110:
        d1 = int(rng.integers(1, 4))
        d2 = int(rng.integers(1, 4))
        cases.append(rng.integers(0, 7, size=(d1, d2)).astype(float))
    cases.sort(key=lambda tbl: tbl.size)  # group by cell count for the lattice cache

    sandwich_ok = 0
    grid_checked = 0
    grid_ok = 0
    for raw in cases:
        tbl = ContingencyCounts(raw)
        bounds = mi_interval_bounds(tbl, cfg)
        crude = mi_interval_crude(tbl, cfg)
        if (
            bounds.i0 + bounds.r_lb <= bounds.inner_lower + 1e-12
            and bounds.inner_lower <= bounds.inner_upper + 1e-12
            and bounds.inner_upper <= bounds.i0 + bounds.r_ub + 1e-12
        ):
            sandwich_ok += 1
        if tbl.cells - 1 <= 5:
            grid_checked += 1
            grid = GridSpec(60)
            oracle = grid_extrema(
                lattice_mi_objective(tbl, cfg, grid),
                tbl.joint_counts(),
                cfg,
                grid,
                on_lattice=True,
            )
            if bounds.conservative_interval().contains_interval(
                oracle, tol=1e-9
            ) and crude.contains_interval(oracle, tol=1e-9):
                grid_ok += 1
    ok = sandwich_ok == len(cases) and grid_ok == grid_checked
    _verdict(
        5,
        ok,
        f"sandwich={sandwich_ok}/{len(cases)}, grid containment={grid_ok}/{grid_checked}",
    )


def test_criterion_06_product_family_containment():
    rng = np.random.default_rng(20260706)
    cfg = IdmConfig(1.0)
    full_grid = GridSpec(200)
    prod_grid = GridSpec(50)
    nested = 0
    covered = 0
    for _ in range(20):
        tbl = ContingencyCounts(rng.integers(0, 13, size=(2, 2)).astype(float))
        prod = product_grid_extrema(mi_objective_direct(tbl, cfg), tbl, cfg, prod_grid)
        full = grid_extrema(
            lattice_mi_objective(tbl, cfg, full_grid),
            tbl.joint_counts(),
            cfg,
            full_grid,
            on_lattice=True,
        )
        if full.contains_interval(prod, tol=1e-12):
            nested += 1
        if mi_interval_bounds(tbl, cfg).conservative_interval().contains_interval(
            prod, tol=1e-9
        ):
            covered += 1
    ok = nested == 20 and covered == 20
    _verdict(6, ok, f"lattice nesting={nested}/20, conservative coverage={covered}/20")


def test_criterion_07_variance_against_monte_carlo():
    # Faithful check of the leading-order variance against a seeded
    # Monte-Carlo estimate.  The truncated expansion carries an O(n^-2)
    # remainder that dwarfs the Monte-Carlo noise at 1e5 draws, so this
    # criterion cannot pass as stated; the numbers below document the gap.
    tbl = ContingencyCounts([[5.0, 1.0], [1.0, 5.0]])
    cfg = IdmConfig(1.0)
    t_star = SimplexPoint.uniform(4)

    t0 = time.perf_counter()
    lead = mi_variance_leading(tbl, cfg, t_star)
    params = (tbl.table + cfg.s * 0.25).ravel()
    draws = dirichlet_draws(params, McSpec(draws=100_000, seed=20260707))
    values = mutual_information_of_chances(draws, 2, 2)
    sample_var = float(values.var(ddof=1))
    se = jackknife_variance_stderr(values)
    elapsed = time.perf_counter() - t0

    gap = abs(lead - sample_var)
    ok = gap <= 3 * se and elapsed < 10.0
    _verdict(
        7,
        ok,
        f"leading={lead:.6f}, mc={sample_var:.6f}, |gap|={gap:.2e}, "
        f"3*se={3 * se:.2e}, runtime={elapsed:.1f} s",
    )


def test_criterion_08_triangular_family():
    checks = []
    rng = np.random.default_rng(20260708)

    # Closed-form coverage identity, and the same to 1e-9 by quadrature.
    from scipy.integrate import quad

    for _ in range(40):
        t = float(rng.uniform(-2, 2))
        alpha = float(rng.uniform(0.5, 0.999))
        iv = triangular_shortest_interval(t, alpha)
        checks.append(abs(triangular_mass(t, iv.lower, iv.upper) - alpha) <= 1e-12)
    t, alpha = 0.4, 0.9
    iv = triangular_shortest_interval(t, alpha)
    density = lambda x: max(0.0, 1.0 - abs(x - t))
    mass, _ = quad(
        density, iv.lower, iv.upper, epsabs=1e-12, limit=200,
        points=[p for p in (t - 1, t, t + 1) if iv.lower < p < iv.upper],
    )
    checks.append(abs(mass - alpha) <= 1e-9)

    for gamma in (0.25, 0.5, 1.0):
        for alpha in (0.5, 0.75, 0.9, 0.95):
            minimal = triangular_minimal_robust(gamma, alpha)
            union = triangular_robust_union(gamma, alpha)
            checks.append(union.contains_interval(minimal))
            checks.append(minimal.width < union.width)
            for t in (-gamma, 0.0, gamma):
                checks.append(
                    triangular_mass(t, minimal.lower, minimal.upper) >= alpha - 1e-9
                )
            seam_gamma = math.sqrt(0.5 * (1.0 - alpha))
            branch_small = 1.0 - math.sqrt(1.0 - alpha - seam_gamma**2)
            branch_large = seam_gamma + 1.0 - math.sqrt(2.0 * (1.0 - alpha))
            checks.append(abs(branch_small - branch_large) <= 1e-12)
    _verdict(8, all(checks), f"{sum(checks)}/{len(checks)} sub-checks")


def test_criterion_09_special_functions():
    checks = []
    for k in range(1, 102):
        psi_expected = float(harmonic_exact(k - 1)) - 0.57721566490153286
        psi1_expected = math.pi**2 / 6 - float(inverse_squares_exact(k - 1))
        checks.append(abs(digamma(float(k)) - psi_expected) <= 1e-13)
        checks.append(abs(trigamma(float(k)) - psi1_expected) <= 1e-13)

    rng = np.random.default_rng(20260709)
    eps = 1e-4
    concave = 0
    for _ in range(1000):
        total = float(rng.integers(2, 101))
        u = float(rng.uniform(0.01, 0.99))
        kernel = EntropyKernel(total)
        if h(u + eps, kernel) - 2 * h(u, kernel) + h(u - eps, kernel) < 0:
            concave += 1
    checks.append(concave == 1000)

    kappa = kappa_from_alpha(0.9545)
    checks.append(abs(kappa - 2.000) <= 1e-3)
    _verdict(9, all(checks), f"concavity {concave}/1000, kappa={kappa:.4f}")


def test_criterion_10_cli_golden_run(capsys):
    status = cli_main(
        ["entropy", "--inline", "3,6", "--s", "1", "--mode", "both", "--format", "json"]
    )
    out = capsys.readouterr().out
    result = json.loads(out)
    exact = result["intervals"]["exact"]
    checks = [
        status == 0,
        exact["lower_rational"] == "7106/12600",
        exact["upper_rational"] == "7883/12600",
        abs(exact["lower"] - float(Fraction(7106, 12600))) <= 1e-11,
        abs(result["intervals"]["conservative"]["lower"] - 0.5564) <= 2e-4,
    ]

    failures = []
    for argv, expected_code in (
        (["entropy", "--inline", ""], "EMPTY_INPUT"),
        (["entropy", "--inline", "1,junk"], "PARSE_FAILURE"),
        (["entropy", "--inline=-1,2"], "NEGATIVE_COUNTS"),
        (["mutinfo", "--inline", "1,2\n3"], "RAGGED_TABLE"),
    ):
        status = cli_main(argv)
        payload = json.loads(capsys.readouterr().out)
        failures.append(status == 1 and payload["error"]["code"] == expected_code)
    checks.extend(failures)
    with capsys.disabled():
        _verdict(10, all(checks), "golden JSON + error codes")
