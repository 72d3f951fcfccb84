"""Regularity predicates and translate-span diagnostics.

A function (or a set of functions) is regular when its Fourier transform
vanishes nowhere (for sets: when the transforms have no common zero); an
operator set is regular when the operator Fourier transforms have no common
zero on the phase space.  At finite scale the approximation theorem is an
exact rank identity — the span of all translates has dimension
|G| - #(common zeros) — and both sides are computed here through
independent routes (transform magnitudes vs. an SVD of the stacked
translates) so their agreement is a genuine cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .groups import GroupFunction, fourier, translate
from .numerics import DEFAULT_ZERO_TOL, svd_rank
from .weyl import HilbertOp, PhaseSpace, fourier_weyl, op_translate


@dataclass
class RegularityReport:
    min_abs_transform: float
    zero_set: list
    translate_span_rank: int
    is_regular: bool
    ambient_dim: int
    warnings: list[str] = field(default_factory=list)

    @property
    def predicates_agree(self) -> bool:
        """Transform predicate vs. rank predicate (full span <=> no zero)."""
        return (self.translate_span_rank == self.ambient_dim) == self.is_regular


def _joint_magnitude(transforms: list[np.ndarray]) -> np.ndarray:
    """Pointwise l2 combination; zero exactly on the common zero set."""
    stacked = np.stack([np.abs(t) ** 2 for t in transforms])
    return np.sqrt(stacked.sum(axis=0))


def _zero_set(joint: np.ndarray, threshold: float, points) -> tuple[list, float]:
    scale = float(joint.max()) if joint.size else 0.0
    cut = threshold * scale
    pts = list(points)
    zeros = [pts[i] for i in np.flatnonzero(joint <= cut)]
    return zeros, scale


def regular_fn(g: GroupFunction, threshold: float = DEFAULT_ZERO_TOL) -> RegularityReport:
    """Regularity of a single function: nowhere-vanishing transform."""
    return regular_set_fn([g], threshold)


def regular_set_fn(
    functions: list[GroupFunction], threshold: float = DEFAULT_ZERO_TOL
) -> RegularityReport:
    """Regularity of a set of functions on a common group.

    zero_set is the common zero set of the transforms (computed from the
    joint magnitude); translate_span_rank is the SVD rank of the span of
    all translates of all members.
    """
    if not functions:
        raise ValueError("regular_set_fn needs a nonempty set of functions")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    group = functions[0].group
    transforms = [fourier(f).values for f in functions]
    joint = _joint_magnitude(transforms)
    zeros, _scale = _zero_set(joint, threshold, group.elements())

    rows = np.stack(
        [translate(f, x).values for f in functions for x in group.elements()]
    )
    rank = svd_rank(rows, threshold)

    report = RegularityReport(
        min_abs_transform=float(joint.min()),
        zero_set=zeros,
        translate_span_rank=rank.rank,
        is_regular=not zeros,
        ambient_dim=group.cardinality,
        warnings=list(rank.warnings),
    )
    if not report.predicates_agree:
        report.warnings.append(
            "transform zero set and translate-span rank disagree; "
            "inputs sit on the decision threshold"
        )
    return report


def regular_op_set(
    operators: list[HilbertOp], threshold: float = DEFAULT_ZERO_TOL
) -> RegularityReport:
    """Regularity of a set of operators on a common dimension.

    zero_set lives on the phase space; translate_span_rank is the rank of
    span{alpha_x(A) : A in the set, x in the phase space} inside the
    N^2-dimensional matrix space.
    """
    if not operators:
        raise ValueError("regular_op_set needs a nonempty set of operators")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    n = operators[0].dim
    if any(op.dim != n for op in operators):
        raise ValueError("operators must share one dimension")
    ps = PhaseSpace(n)
    transforms = [fourier_weyl(op).values for op in operators]
    joint = _joint_magnitude(transforms)
    zeros, _scale = _zero_set(joint, threshold, ps.points())

    rows = np.stack(
        [op_translate(op, x).matrix.ravel() for op in operators for x in ps.points()]
    )
    rank = svd_rank(rows, threshold)

    report = RegularityReport(
        min_abs_transform=float(joint.min()),
        zero_set=zeros,
        translate_span_rank=rank.rank,
        is_regular=not zeros,
        ambient_dim=n * n,
        warnings=list(rank.warnings),
    )
    if not report.predicates_agree:
        report.warnings.append(
            "transform zero set and translate-span rank disagree; "
            "inputs sit on the decision threshold"
        )
    return report


def degenerate_operator_set(n: int, seed: int = 0) -> dict[str, HilbertOp]:
    """Fixed operators with structured transform zero sets, for audits.

    Identity, a diagonal point mass, three Weyl unitaries, the reflection
    operator, and a rank-one built from a reflection-symmetric vector.
    """
    from .weyl import identity_op, parity_op, rank_one, weyl  # local to avoid cycle noise

    ps = PhaseSpace(n)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    phi = v + parity_op(ps).matrix @ v
    nrm = np.linalg.norm(phi)
    if nrm < 1e-12:  # reflection-antisymmetric draw; perturb deterministically
        phi = v + 1.0
        nrm = np.linalg.norm(phi)
    phi = phi / nrm
    e0 = np.zeros(n)
    e0[0] = 1.0
    ops = {
        "identity": identity_op(n),
        "diag_point_mass": rank_one(e0),
        "reflection": parity_op(ps),
        "rank_one_symmetric": rank_one(phi),
    }
    for x in [(1, 0), (0, 1), (1, 1)]:
        ops[f"weyl_{x[0]}_{x[1]}"] = weyl(ps, x)
    return ops


def corresponding_space(
    ps: PhaseSpace, d0_basis: list[GroupFunction], threshold: float = DEFAULT_ZERO_TOL
) -> list[HilbertOp]:
    """Orthonormal (HS) basis of span{A * f : A a matrix unit, f in d0_basis}.

    Returns [] for an empty basis.  Enlarging d0_basis never shrinks the
    result, and repeating the construction on its own output is idempotent
    up to unitary re-mixing of the basis.

    At finite dimension every translation-invariant function space that
    separates points produces the full matrix space here (the compact and
    bounded operator classes coincide), so the construction distinguishes
    only proper subspaces such as the constants (which give the identity
    line, since 1 * A = Tr(A) I).
    """
    from .conv import conv_fn_op

    if not d0_basis:
        return []
    n = ps.n
    rows = []
    for f in d0_basis:
        for u in range(n):
            for v in range(n):
                unit = np.zeros((n, n), dtype=complex)
                unit[u, v] = 1.0
                rows.append(conv_fn_op(f, HilbertOp(unit)).matrix.ravel())
    mat = np.stack(rows)
    svals = np.linalg.svd(mat, compute_uv=False)
    smax = svals[0] if svals.size else 0.0
    if smax == 0.0:
        return []
    _u, s, vh = np.linalg.svd(mat, full_matrices=False)
    keep = s > threshold * smax
    return [HilbertOp(vh[i].reshape(n, n)) for i in np.flatnonzero(keep)]
