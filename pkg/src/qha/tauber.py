"""Short-time Fourier analysis, certified tail bounds, and uniform
compactness profiles.

The windowed transform of f against a window function Phi is

    V(x, xi) = haar_weight * sum_t Phi(t) xi(t) f(t - x),

computed either on a finite group (exhaustive dual) or on a window of the
integer lattice (torus dual sampled on a grid, profiles restricted to the
boundary-free shift range).  The certified tail bound max_j t_j + eps*C is
the quantity controlling sup-tails of convolutions over any family covered
by an eps-net with generator tails t_j and sup bound C.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .asymptotics.profiles import DecayProfile
from .asymptotics.windowed import WindowedFunction, WindowedZOperator, window_weyl_matrix
from .conv import conv_fn_op, conv_op_op
from .errors import GroupMismatchError, PreconditionError
from .groups import FiniteAbelianGroup, GroupFunction
from .weyl import HilbertOp, PhaseSpace, rank_one, weyl


# --- short-time Fourier transform --------------------------------------------


def stft(f: GroupFunction, window: GroupFunction) -> np.ndarray:
    """Matrix V[x, xi] over (group element, character) index pairs.

    Linear in both arguments; satisfies the energy identity
    sum_{x,xi} |V|^2 w_G w_dual = ||window||_2^2 ||f||_2^2.
    """
    if f.group.orders != window.group.orders or not np.isclose(
        f.group.haar_weight, window.group.haar_weight
    ):
        raise GroupMismatchError("transform needs f and window on one group")
    group = f.group
    card = group.cardinality
    elements = list(group.elements())
    # table[t, x] = f(t - x)
    sub = np.empty((card, card), dtype=complex)
    for x_idx, x in enumerate(elements):
        for t_idx, t in enumerate(elements):
            sub[t_idx, x_idx] = f.values[group.index(tuple(a - b for a, b in zip(t, x)))]
    chars = np.empty((card, card), dtype=complex)
    for c_idx, freqs in enumerate(elements):
        chars[:, c_idx] = group.character(freqs).values()
    weighted_window = window.values[:, None] * chars  # (t, xi)
    return group.haar_weight * (sub.T @ weighted_window)


def stft_energy(v: np.ndarray, group: FiniteAbelianGroup) -> float:
    """Weighted energy of a transform matrix."""
    return float((np.abs(v) ** 2).sum() * group.haar_weight * group.dual().haar_weight)


def windowed_stft_profile(
    f: WindowedFunction, window: WindowedFunction, angles: np.ndarray
) -> DecayProfile:
    """sup over sampled dual angles of |V(x, .)|, on the boundary-free range.

    The window function must be supported strictly inside f's index window;
    the valid shifts x are those for which every translate t - x stays
    inside f's window for t in the support of the window function.
    """
    s_lo, s_hi = window.support()
    if s_hi < s_lo:
        raise PreconditionError("window function is identically zero")
    if s_lo < f.lo or s_hi > f.hi:
        raise PreconditionError("window support exceeds the function window")
    x_lo = s_hi - f.hi
    x_hi = s_lo - f.lo
    angles = np.asarray(angles, dtype=float)
    sup_t = np.arange(s_lo, s_hi + 1)
    phi = window.values[s_lo - window.lo : s_hi - window.lo + 1]
    xs = np.arange(x_lo, x_hi + 1)
    vals = np.empty(xs.size)
    char = np.exp(1j * np.outer(angles, sup_t))  # (angle, t)
    weighted = char * phi[None, :]
    for i, x in enumerate(xs):
        seg = f.values[s_lo - x - f.lo : s_hi - x - f.lo + 1]
        vals[i] = float(np.abs(weighted @ seg).max())
    return DecayProfile(xs.astype(float), vals)


# --- certified tail bounds ----------------------------------------------------


@dataclass(frozen=True)
class NetCertificate:
    """Data extracted from an eps-net covering of a convolver family.

    generator_tails: measured sup-tails of the net centers; epsilon: net
    radius in the L1 norm; bound_c: sup bound on the convolved family.
    """

    generator_tails: tuple[float, ...]
    epsilon: float
    bound_c: float

    def __post_init__(self):
        tails = tuple(float(t) for t in self.generator_tails)
        if any(t < 0 for t in tails) or self.epsilon < 0 or self.bound_c < 0:
            raise ValueError("certificate entries must be nonnegative")
        object.__setattr__(self, "generator_tails", tails)


def certified_tail_bound(cert: NetCertificate) -> float:
    """max_j t_j + eps * C; an upper bound for the covered family's sup-tail."""
    if not cert.generator_tails:
        raise PreconditionError("certificate needs at least one generator tail")
    return max(cert.generator_tails) + cert.epsilon * cert.bound_c


def greedy_l1_net(functions: list[np.ndarray], epsilon: float, weight: float = 1.0):
    """Greedy eps-net in the weighted l1 metric.

    Returns (center_indices, assignment, max_radius) with every member
    assigned to a center within epsilon (max_radius is the verified
    worst-case distance).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    centers: list[int] = []
    assignment = [-1] * len(functions)
    for i, f in enumerate(functions):
        for c in centers:
            if weight * np.abs(f - functions[c]).sum() <= epsilon:
                assignment[i] = c
                break
        else:
            centers.append(i)
            assignment[i] = i
    radius = max(
        (weight * float(np.abs(functions[i] - functions[a]).sum()) for i, a in enumerate(assignment)),
        default=0.0,
    )
    return centers, assignment, radius


def valid_convolution_range(f_size: int, support: int) -> slice:
    """Slice of np.convolve(h, f, mode='full') where the window played no role."""
    return slice(2 * support, f_size)


def tail_bound_trial(
    rng: np.random.Generator,
    window: int = 48,
    support: int = 6,
    generators: int = 3,
    perturbations: int = 4,
    bound_c: float = 3.0,
    epsilon: float = 0.05,
) -> tuple[float, float]:
    """One randomized soundness instance: (measured sup-tail, certified bound).

    Generators are finitely supported convolvers on a lattice window, the
    family consists of l1-perturbations of radius <= epsilon, the convolved
    functions are sup-bounded by C, and the tail region is the outer third
    of the valid shift range.
    """
    width = 2 * support + 1
    gens = [
        rng.standard_normal(width) + 1j * rng.standard_normal(width)
        for _ in range(generators)
    ]
    fs = []
    for _ in range(3):
        f = rng.standard_normal(2 * window + 1) + 1j * rng.standard_normal(2 * window + 1)
        f = f / max(1.0, np.abs(f).max() / bound_c)
        fs.append(f)
    valid = valid_convolution_range(2 * window + 1, support)
    # tail region: outer third of the valid range, both ends
    n_valid = valid.stop - valid.start

    def tail_values(h):
        out = []
        for f in fs:
            conv = np.convolve(h, f, mode="full")[valid]
            third = max(1, n_valid // 3)
            out.append(np.abs(np.concatenate([conv[:third], conv[-third:]])))
        return np.concatenate(out)

    tails = tuple(float(tail_values(g).max()) for g in gens)
    cert = NetCertificate(tails, epsilon, bound_c)
    bound = certified_tail_bound(cert)

    measured = 0.0
    for g in gens:
        for _ in range(perturbations):
            d = rng.standard_normal(width) + 1j * rng.standard_normal(width)
            d = d * (epsilon * rng.random() / max(np.abs(d).sum(), 1e-300))
            measured = max(measured, float(tail_values(g + d).max()))
    return measured, bound


# --- relative-compactness moduli ----------------------------------------------


def rk_moduli(
    family: list[WindowedFunction], max_shift: int | None = None, tail_marks: list[int] | None = None
) -> tuple[DecayProfile, DecayProfile]:
    """Equicontinuity modulus and tail-mass curves for a function family.

    modulus(s) = sup over the family of ||shift_s(h) - h||_1 (valid-range
    shifts only); tailmass(M) = sup of the l1 mass at indices |t| > M.

    Any finite family on a bounded window trivially passes both conditions
    in the limit; the curves are informative for families meant to model
    unbounded spreading (growing shifts, slow tails) inside the window.
    """
    if not family:
        raise ValueError("rk_moduli needs a nonempty family")
    lo = min(h.lo for h in family)
    hi = max(h.hi for h in family)
    span = hi - lo
    if max_shift is None:
        max_shift = max(1, span // 4)
    shifts = np.arange(1, max_shift + 1)
    modulus = np.zeros(shifts.size)
    for h in family:
        vals = h.values
        for i, s in enumerate(shifts):
            if s >= vals.size:
                diff = 2 * float(np.abs(vals).sum())
            else:
                shifted = np.zeros_like(vals)
                shifted[s:] = vals[:-s]
                diff = float(np.abs(shifted - vals).sum())
            modulus[i] = max(modulus[i], diff)
    if tail_marks is None:
        tail_marks = sorted({span // 8, span // 4, span // 2, span} - {0})
    marks = np.asarray(sorted(tail_marks), dtype=float)
    tail = np.zeros(marks.size)
    for h in family:
        idx = np.arange(h.lo, h.hi + 1)
        for i, m in enumerate(marks):
            tail[i] = max(tail[i], float(np.abs(h.values[np.abs(idx) > m]).sum()))
    return DecayProfile(shifts.astype(float), modulus), DecayProfile(marks, tail)


# --- localization and uniform compactness --------------------------------------


def localization_operator(f: GroupFunction, phi, psi=None) -> HilbertOp:
    """Time-frequency filter with symbol f: f * (phi (x) psi).

    Positive semidefinite whenever f >= 0 and psi = phi.
    """
    op = rank_one(np.asarray(phi, dtype=complex), None if psi is None else np.asarray(psi, dtype=complex))
    return conv_fn_op(f, op)


def uniform_compactness_profile(
    a: HilbertOp, b: HilbertOp, points: list[tuple[int, int]]
) -> DecayProfile:
    """Profile over y of sup_{x in points} |((U_x A) * B)(y)| on the phase space."""
    if not points:
        raise PreconditionError("need a nonempty set of phase-space points")
    ps = PhaseSpace(a.dim)
    sup = None
    for x in points:
        shifted = HilbertOp(weyl(ps, x).matrix @ a.matrix)
        vals = np.abs(conv_op_op(shifted, b).values)
        sup = vals if sup is None else np.maximum(sup, vals)
    return DecayProfile(np.arange(ps.n * ps.n, dtype=float), sup)


def windowed_compactness_profile(
    a: WindowedZOperator,
    b: WindowedZOperator,
    points: list[tuple[int, float]],
    shifts: np.ndarray,
    theta_points: int = 16,
) -> DecayProfile:
    """Windowed analogue: profile over integer shifts y of
    sup over (k, theta) in points and theta' on a grid of
    |Tr((W_(k,theta) A) alpha_(y,theta')(reflect(B)))|.

    Exact only while every shift keeps the supports inside the window; the
    caller chooses a boundary-free shift range.
    """
    if not points:
        raise PreconditionError("need a nonempty set of phase-space points")
    if (a.lo, a.hi) != (b.lo, b.hi):
        raise GroupMismatchError("operators must share one window")
    from .asymptotics.windowed import reflect_operator, shift_operator

    b_ref = reflect_operator(b)
    angles = 2 * np.pi * np.arange(theta_points) / theta_points
    shifted_as = [
        window_weyl_matrix(a.lo, a.hi, k, th) @ a.matrix for (k, th) in points
    ]
    out = np.zeros(len(shifts))
    for yi, y in enumerate(np.asarray(shifts, dtype=int)):
        best = 0.0
        for th2 in angles:
            moved = shift_operator(b_ref, int(y), float(th2)).matrix
            for sa in shifted_as:
                best = max(best, abs(np.trace(sa @ moved)))
        out[yi] = best
    return DecayProfile(np.asarray(shifts, dtype=float), out)


def modulate_family_is_regular(window: GroupFunction, threshold: float = 1e-8) -> bool:
    """Whether the family of all modulations of the window is regular.

    Equivalent to the window's transform having at least one nonvanishing
    point (modulation translates the transform over the whole dual).
    """
    from .groups import modulate
    from .wiener import regular_set_fn

    group = window.group
    family = [modulate(window, group.character(freqs)) for freqs in group.elements()]
    return regular_set_fn(family, threshold).is_regular
