"""Step-h discretizations of convolution/integral operators on an interval.

Matrices carry the quadrature weight: an operator with kernel k acts as
(Af)(x_i) = sum_j h * k(x_i, x_j) f(x_j), and vectors use the weighted
pairing <u, v> = h * sum u_i conj(v_i).  Indicators are resolved with the
half-open convention [a, b) on the grid, which keeps aligned interval
projections exact.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError


def _near_int(x: float, tol: float = 1e-9) -> bool:
    return abs(x - round(x)) <= tol


@dataclass
class GridOperator:
    h: float
    x_lo: float
    x_hi: float
    matrix: np.ndarray

    def __post_init__(self):
        if self.h <= 0:
            raise PreconditionError("step h must be positive")
        steps = (self.x_hi - self.x_lo) / self.h
        if not _near_int(steps):
            raise PreconditionError(
                f"(x_hi - x_lo)/h = {steps} must be integral for a uniform grid"
            )
        size = int(round(steps)) + 1
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (size, size):
            raise ValueError(f"matrix shape {mat.shape} does not match grid size {size}")
        self.matrix = mat

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def grid(self) -> np.ndarray:
        return self.x_lo + self.h * np.arange(self.size)

    def vec_norm(self, f: np.ndarray) -> float:
        """Weighted l2 norm sqrt(h * sum |f|^2)."""
        return float(np.sqrt(self.h * (np.abs(f) ** 2).sum()))

    def apply(self, f: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(f, dtype=complex)

    def op_norm(self) -> float:
        # The uniform weight cancels, so the weighted operator norm is the
        # plain spectral norm of the matrix.
        return float(np.linalg.norm(self.matrix, ord=2))


def box_convolution_operator(h: float, x_lo: float, x_hi: float) -> GridOperator:
    """Convolution by the indicator of [-1, 1]: entries h * 1(|x_i - x_j| <= 1).

    Symmetric Toeplitz; interior row sums are 2 + h, and the operator norm
    tends to 2 (the peak of the kernel's transform) as h -> 0.
    """
    if h > 0.5:
        raise PreconditionError("box_convolution_operator needs h <= 0.5")
    if x_hi <= x_lo:
        raise PreconditionError("degenerate range: x_hi must exceed x_lo")
    steps = (x_hi - x_lo) / h
    if not _near_int(steps):
        raise PreconditionError(f"(x_hi - x_lo)/h = {steps} must be integral")
    size = int(round(steps)) + 1
    band = int(np.floor(1.0 / h + 1e-9))
    i = np.arange(size)
    mat = (np.abs(i[:, None] - i[None, :]) <= band).astype(float) * h
    return GridOperator(h, x_lo, x_hi, mat)


def modulated_box_operator(h: float, x_lo: float, x_hi: float, freq: float) -> GridOperator:
    """Conjugation of the box operator by the phase e^(-i freq x).

    Unitarily equivalent to the box operator (same spectral norm) while its
    action on any fixed smooth vector fades as |freq| grows.
    """
    box = box_convolution_operator(h, x_lo, x_hi)
    phase = np.exp(-1j * freq * box.grid())
    mat = phase[:, None] * box.matrix * phase.conj()[None, :]
    return GridOperator(h, x_lo, x_hi, mat)


def _interval_mask(grid_lo: float, h: float, size: int, a: float, b: float) -> np.ndarray:
    """Indicator of [a, b) sampled on the grid, resolved by index arithmetic."""
    start = (a - grid_lo) / h
    stop = (b - grid_lo) / h
    if not (_near_int(start) and _near_int(stop)):
        raise PreconditionError(
            f"interval [{a}, {b}) endpoints must land on the step-{h} grid"
        )
    i0 = max(0, int(round(start)))
    i1 = min(size, int(round(stop)))
    mask = np.zeros(size)
    mask[i0:i1] = 1.0
    return mask


def piecewise_box_smoothed_indicator(n: int, x: np.ndarray) -> np.ndarray:
    """Closed form of 1_{I_n} * 1_{[-1,1]} for I_n = [n^2 - n/2, n^2 + n/2].

    Trapezoid with plateau value 2 on [n^2 - n/2 + 1, n^2 + n/2 - 1]; the
    case boundaries are consistent only for n >= 2 (for n = 1 the window is
    longer than the interval and the plateau is empty).
    """
    if n < 2:
        raise PreconditionError("closed-form comparison is defined for n >= 2")
    c, half = n * n, n / 2.0
    up = x + (1.0 + half - c)
    down = -x + (c + half + 1.0)
    out = np.full_like(x, 2.0, dtype=float)
    out = np.where(x <= c - half + 1.0, up, out)
    out = np.where(x >= c + half - 1.0, down, out)
    out = np.where(x <= c - half - 1.0, 0.0, out)
    out = np.where(x >= c + half + 1.0, 0.0, out)
    return out


@dataclass
class CacRecord:
    """Verification record for the projection/box-convolution product."""

    h: float
    n_max: int
    projector: GridOperator         # A, the block integral operator
    box: GridOperator               # C
    product: GridOperator           # C A C
    projection_residual: float      # ||A^2 - A||_op
    g_max_errors: dict[int, float]  # n >= 2: max |discrete conv - closed form|
    plateau_max_dev: dict[int, float]  # n >= 3: deviation from 2 at interior plateau points
    min_kernel_gap: float           # min over the grid of k' - k
    product_norms: dict[int, float]  # n -> ||CAC f_n|| with f_n = n^(-1/2) 1_{I_n}

    def worst_g_error(self) -> float:
        return max(self.g_max_errors.values()) if self.g_max_errors else 0.0


def cac_example(h: float, n_max: int, x_lo: float = 0.0, x_hi: float | None = None) -> CacRecord:
    """Build A (block projection), C (box convolution) and CAC on a grid.

    Preconditions: h <= 0.5, 0.5/h integral (so every interval endpoint
    n^2 +- n/2 lands on the grid), and the grid covering
    [0, n_max^2 + n_max/2 + 2].
    """
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    if h > 0.5:
        raise PreconditionError("step h must satisfy h <= 0.5")
    if not _near_int(0.5 / h):
        raise PreconditionError(
            f"step h = {h} must divide 0.5 so interval endpoints land on the grid"
        )
    needed = n_max * n_max + n_max / 2.0 + 2.0
    if x_hi is None:
        x_hi = needed
    if x_lo > 0.0 or x_hi < needed:
        raise PreconditionError(
            f"grid [{x_lo}, {x_hi}] must cover [0, {needed}] for n_max = {n_max}"
        )

    box = box_convolution_operator(h, x_lo, x_hi)
    grid = box.grid()
    size = grid.size

    masks = {}
    proj = np.zeros((size, size))
    for n in range(1, n_max + 1):
        a, b = n * n - n / 2.0, n * n + n / 2.0
        mask = _interval_mask(x_lo, h, size, a, b)
        masks[n] = mask
        proj += (h / n) * np.outer(mask, mask)
    projector = GridOperator(h, x_lo, x_hi, proj)
    product = GridOperator(h, x_lo, x_hi, box.matrix @ proj @ box.matrix)

    projection_residual = float(np.linalg.norm(proj @ proj - proj, ord=2))

    # Discrete smoothing of each interval indicator with the half-open box
    # (offsets in [-1, 1)), against the closed-form trapezoid.
    band = int(round(1.0 / h))
    kernel = np.ones(2 * band)
    g_max_errors: dict[int, float] = {}
    plateau_max_dev: dict[int, float] = {}
    for n in range(2, n_max + 1):
        conv_full = np.convolve(masks[n], kernel)
        g_disc = h * conv_full[band : band + size]
        g_exact = piecewise_box_smoothed_indicator(n, grid)
        g_max_errors[n] = float(np.abs(g_disc - g_exact).max())
        interior = (grid > n * n - n / 2.0 + 1.0) & (grid < n * n + n / 2.0 - 1.0)
        if interior.any():
            plateau_max_dev[n] = float(np.abs(g_disc[interior] - 2.0).max())

    min_kernel_gap = float(((product.matrix - proj).real / h).min())

    product_norms: dict[int, float] = {}
    for n in range(1, n_max + 1):
        f_n = masks[n] / np.sqrt(n)
        product_norms[n] = product.vec_norm(product.apply(f_n))

    return CacRecord(
        h=h,
        n_max=n_max,
        projector=projector,
        box=box,
        product=product,
        projection_residual=projection_residual,
        g_max_errors=g_max_errors,
        plateau_max_dev=plateau_max_dev,
        min_kernel_gap=min_kernel_gap,
        product_norms=product_norms,
    )
