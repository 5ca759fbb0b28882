"""Expected mutual information on contingency tables, with robust bounds.

The expected mutual information of a Dirichlet posterior over a two-way
table decomposes into three expected entropies,

    I(u) = H(u_rows) + H(u_cols) - H(u_cells),

each a sum of the concave summand ``h``.  This yields a crude interval
from the exact marginal entropy extrema, an O(sigma^2)-tight conservative
interval by per-cell remainder propagation, the leading-order posterior
variance, and an exhaustive check that the bounds also cover the smaller
outer-product (row x column) family of hyperparameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact_extrema import entropy_interval_exact
from .simplex_core import CountVector, IdmConfig, Interval, SimplexPoint
from .special_fn import EntropyKernel, h, h_prime


@dataclass(frozen=True, eq=False)
class ContingencyCounts:
    """Joint category counts ``n_ij`` with cached marginals."""

    table: np.ndarray

    def __post_init__(self):
        arr = np.array(self.table, dtype=float)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("table must be a non-empty two-dimensional array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("table entries must be finite")
        if np.any(arr < 0):
            raise ValueError("table entries must be non-negative")
        arr.flags.writeable = False
        row_sums = arr.sum(axis=1)
        col_sums = arr.sum(axis=0)
        row_sums.flags.writeable = False
        col_sums.flags.writeable = False
        object.__setattr__(self, "table", arr)
        object.__setattr__(self, "row_sums", row_sums)
        object.__setattr__(self, "col_sums", col_sums)
        object.__setattr__(self, "total", float(arr.sum()))

    @property
    def shape(self) -> tuple[int, int]:
        return self.table.shape

    @property
    def cells(self) -> int:
        return self.table.size

    def joint_counts(self) -> CountVector:
        """The cells flattened row-major, as a plain count vector."""
        return CountVector(self.table.ravel())

    def row_counts(self) -> CountVector:
        return CountVector(self.row_sums)

    def col_counts(self) -> CountVector:
        return CountVector(self.col_sums)


@dataclass(frozen=True, eq=False)
class MiBounds:
    """Conservative, inner, and crude interval data for the expected MI.

    The sandwich ``i0 + r_lb <= inner_lower <= inner_upper <= i0 + r_ub``
    always holds; the crude interval need not contain the conservative one
    (or vice versa), but both individually contain the true robust
    interval.
    """

    i0: float
    r_ub_per_ij: np.ndarray
    r_lb_per_ij: np.ndarray
    r_ub: float
    r_lb: float
    inner_upper: float
    inner_lower: float
    cell1: tuple[int, int]
    cell2: tuple[int, int]
    crude: Interval
    sigma: float

    def conservative_interval(self) -> Interval:
        return Interval(self.i0 + self.r_lb, self.i0 + self.r_ub)

    def inner_interval(self) -> Interval:
        return Interval(self.inner_lower, self.inner_upper)


def _cell_means(tbl: ContingencyCounts, cfg: IdmConfig, t: SimplexPoint) -> np.ndarray:
    d1, d2 = tbl.shape
    if t.dim != d1 * d2:
        raise ValueError(
            f"dimension mismatch: table has {d1 * d2} cells, t has {t.dim} components"
        )
    denom = tbl.total + cfg.s
    return (tbl.table + cfg.s * t.t.reshape(d1, d2)) / denom


def expected_mi(tbl: ContingencyCounts, cfg: IdmConfig, t: SimplexPoint) -> float:
    """Expected mutual information at cell hyperparameter ``t``.

    ``t`` runs over the flattened cells in row-major order.  The value is
    the three-entropy combination of the row, column, and joint posterior
    means, all with kernel ``n + s``.
    """
    u = _cell_means(tbl, cfg, t)
    kernel = EntropyKernel(tbl.total + cfg.s)
    return float(
        h(u.sum(axis=1), kernel).sum()
        + h(u.sum(axis=0), kernel).sum()
        - h(u, kernel).sum()
    )


def mi_interval_crude(tbl: ContingencyCounts, cfg: IdmConfig) -> Interval:
    """Crude robust MI interval from exact marginal entropy extrema.

    Marginals of a Dirichlet are Dirichlet with the same strength, so the
    exact entropy machinery applies to rows, columns, and joint cells
    independently; the combination bounds the MI from both sides.  Valid
    but potentially very loose on unbalanced tables.
    """
    rows = entropy_interval_exact(tbl.row_counts(), cfg)
    cols = entropy_interval_exact(tbl.col_counts(), cfg)
    joint = entropy_interval_exact(tbl.joint_counts(), cfg)
    return Interval(
        rows.lower + cols.lower - joint.upper,
        rows.upper + cols.upper - joint.lower,
    )


def mi_interval_bounds(tbl: ContingencyCounts, cfg: IdmConfig) -> MiBounds:
    """O(sigma^2)-tight conservative bounds on the expected MI.

    Per-cell remainder vectors combine the row, column, and (negated)
    joint entropy remainders before any aggregation; the extremizing cells
    then give inner bounds by direct evaluation at the corresponding
    vertex hyperparameters.  Row-major order breaks ties.
    """
    d1, d2 = tbl.shape
    denom = tbl.total + cfg.s
    sigma = cfg.s / denom
    kernel = EntropyKernel(denom)

    u0_cells = tbl.table / denom
    u0_rows = tbl.row_sums / denom
    u0_cols = tbl.col_sums / denom

    i0 = float(
        h(u0_rows, kernel).sum() + h(u0_cols, kernel).sum() - h(u0_cells, kernel).sum()
    )

    hp_rows = np.asarray(h_prime(u0_rows, kernel))
    hp_cols = np.asarray(h_prime(u0_cols, kernel))
    hp_cells = np.asarray(h_prime(u0_cells, kernel))
    hp_rows_s = np.asarray(h_prime(u0_rows + sigma, kernel))
    hp_cols_s = np.asarray(h_prime(u0_cols + sigma, kernel))
    hp_cells_s = np.asarray(h_prime(u0_cells + sigma, kernel))

    r_ub = sigma * (hp_rows[:, None] + hp_cols[None, :] - hp_cells_s)
    r_lb = sigma * (hp_rows_s[:, None] + hp_cols_s[None, :] - hp_cells)

    flat1 = int(np.argmax(r_ub))
    flat2 = int(np.argmin(r_lb))
    cell1 = tuple(int(v) for v in np.unravel_index(flat1, r_ub.shape))
    cell2 = tuple(int(v) for v in np.unravel_index(flat2, r_lb.shape))

    inner_upper = expected_mi(tbl, cfg, SimplexPoint.vertex(d1 * d2, flat1))
    inner_lower = expected_mi(tbl, cfg, SimplexPoint.vertex(d1 * d2, flat2))

    r_ub.flags.writeable = False
    r_lb.flags.writeable = False
    return MiBounds(
        i0=i0,
        r_ub_per_ij=r_ub,
        r_lb_per_ij=r_lb,
        r_ub=float(r_ub.ravel()[flat1]),
        r_lb=float(r_lb.ravel()[flat2]),
        inner_upper=inner_upper,
        inner_lower=inner_lower,
        cell1=cell1,
        cell2=cell2,
        crude=mi_interval_crude(tbl, cfg),
        sigma=sigma,
    )


def mi_variance_leading(tbl: ContingencyCounts, cfg: IdmConfig, t: SimplexPoint) -> float:
    """Leading-order posterior variance of the mutual information.

    ``Var[I] ~ (1/(n+s)) * Var_u[log(u_ij / (u_i+ u_+j))]`` where the inner
    variance is taken cellwise with weights ``u``.  Computed in centered
    form, so the result is non-negative down to the last bit.  Higher-order
    terms are omitted; at small ``n`` they are material.  Zero cells are
    rejected (the log diverges).
    """
    u = _cell_means(tbl, cfg, t)
    if np.any(u <= 0):
        raise ValueError("zero cell in the posterior mean; variance needs positive logs")
    ratios = np.log(u / np.outer(u.sum(axis=1), u.sum(axis=0)))
    center = float((u * ratios).sum())
    return float((u * (ratios - center) ** 2).sum() / (tbl.total + cfg.s))


def product_idm_check(
    tbl: ContingencyCounts, cfg: IdmConfig, bounds: MiBounds, resolution: int
) -> bool:
    """Exhaustively verify the MI bounds over outer-product hyperparameters.

    Enumerates ``t = v (x) w`` for ``(v, w)`` on the factor-simplex
    lattices (``t_ij = v_i * w_j``) and returns True iff every lattice MI
    value lies inside the conservative interval *and* the inner bounds are
    attained within lattice tolerance.  The factor-simplex vertices map to
    the full-simplex vertices, so attainment holds exactly up to float
    noise.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    from .oracle import compositions  # local import; oracle depends on this module

    d1, d2 = tbl.shape
    denom = tbl.total + cfg.s
    kernel = EntropyKernel(denom)
    v = compositions(resolution, d1).astype(float) / resolution
    w = compositions(resolution, d2).astype(float) / resolution

    lo = bounds.i0 + bounds.r_lb
    hi = bounds.i0 + bounds.r_ub
    vmin = np.inf
    vmax = -np.inf
    chunk = max(1, 2**17 // max(1, w.shape[0]))
    for start in range(0, v.shape[0], chunk):
        vc = v[start : start + chunk]
        t = vc[:, None, :, None] * w[None, :, None, :]
        u = (tbl.table + cfg.s * t) / denom
        vals = (
            h(u.sum(axis=3), kernel).sum(axis=2)
            + h(u.sum(axis=2), kernel).sum(axis=2)
            - h(u, kernel).sum(axis=(2, 3))
        )
        vmin = min(vmin, float(vals.min()))
        vmax = max(vmax, float(vals.max()))

    tol = 1e-9
    contained = lo - tol <= vmin and vmax <= hi + tol
    attained = vmax >= bounds.inner_upper - tol and vmin <= bounds.inner_lower + tol
    return contained and attained
