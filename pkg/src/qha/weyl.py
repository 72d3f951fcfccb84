"""Finite phase space Z_N x Z_N, projective Weyl operators and their calculus.

The phase space carries the Heisenberg multiplier
``m((a,b),(c,d)) = omega^(-a*d)`` with ``omega = exp(2*pi*i/N)``, Haar weight
1/N per point, and the Weyl operators ``U_(a,b) f(t) = omega^(b*t) f(t-a)``
on C^N.  This phase convention makes ``U_x U_y = m(x,y) U_{x+y}`` hold with
no auxiliary phase.  The antisymmetrized pairing
``sigma(x,y) = m(x,y) * conj(m(y,x))`` is a perfect pairing of the phase
space with its dual (the multiplier itself is not injective as a map into
the dual, so sigma is the self-duality used everywhere downstream).

Operators are immutable; norm attributes are computed lazily and
idempotently (concurrent readers may recompute but always observe equal
values).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import PreconditionError
from .groups import FiniteAbelianGroup, GroupFunction


@dataclass(frozen=True)
class PhaseSpace:
    """Z_N x Z_N with the canonical Heisenberg multiplier and weight 1/N."""

    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise ValueError("phase space dimension must be >= 1")
        object.__setattr__(self, "n", int(self.n))

    @property
    def omega(self) -> complex:
        return complex(np.exp(2j * np.pi / self.n))

    @property
    def haar_weight(self) -> float:
        return 1.0 / self.n

    def points(self):
        """All N^2 points (a, b) in lexicographic order."""
        n = self.n
        return [(a, b) for a in range(n) for b in range(n)]

    def point(self, x) -> tuple[int, int]:
        a, b = x
        return (int(a) % self.n, int(b) % self.n)

    def index(self, x) -> int:
        a, b = self.point(x)
        return a * self.n + b

    def add(self, x, y) -> tuple[int, int]:
        return ((x[0] + y[0]) % self.n, (x[1] + y[1]) % self.n)

    def neg(self, x) -> tuple[int, int]:
        return ((-x[0]) % self.n, (-x[1]) % self.n)

    def multiplier(self, x, y) -> complex:
        """m((a,b),(c,d)) = omega^(-a*d); satisfies the cocycle relation."""
        (a, _b), (_c, d) = self.point(x), self.point(y)
        return complex(self.omega ** (-(a * d) % self.n))

    def pairing(self, x, y) -> complex:
        """sigma(x,y) = m(x,y)*conj(m(y,x)) = omega^(c*b - a*d); perfect pairing."""
        (a, b), (c, d) = self.point(x), self.point(y)
        return complex(self.omega ** ((c * b - a * d) % self.n))

    def as_group(self) -> FiniteAbelianGroup:
        """The phase space as a plain group (functions on it live here)."""
        return FiniteAbelianGroup((self.n, self.n), 1.0 / self.n)

    def function(self, values) -> GroupFunction:
        return GroupFunction(self.as_group(), np.asarray(values, dtype=complex))


class HilbertOp:
    """N x N complex matrix with lazily computed operator/trace/HS norms."""

    def __init__(self, matrix):
        mat = np.array(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("HilbertOp expects a square matrix")
        if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
            raise ValueError("matrix entries must be finite")
        mat.setflags(write=False)
        self.matrix = mat

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def singular_values(self) -> np.ndarray:
        sv = np.linalg.svd(self.matrix, compute_uv=False)
        sv.setflags(write=False)
        return sv

    @property
    def op_norm(self) -> float:
        return float(self.singular_values[0]) if self.dim else 0.0

    @property
    def trace_norm(self) -> float:
        return float(self.singular_values.sum())

    @property
    def hs_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def adjoint(self) -> "HilbertOp":
        return HilbertOp(self.matrix.conj().T)

    def __add__(self, other: "HilbertOp") -> "HilbertOp":
        return HilbertOp(self.matrix + other.matrix)

    def __sub__(self, other: "HilbertOp") -> "HilbertOp":
        return HilbertOp(self.matrix - other.matrix)

    def __matmul__(self, other: "HilbertOp") -> "HilbertOp":
        return HilbertOp(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"HilbertOp(dim={self.dim})"


def identity_op(n: int) -> HilbertOp:
    return HilbertOp(np.eye(n))


def rank_one(phi, psi=None) -> HilbertOp:
    """Sesquilinear tensor phi (x) psi: g -> <g, psi> phi."""
    phi = np.asarray(phi, dtype=complex)
    psi = phi if psi is None else np.asarray(psi, dtype=complex)
    return HilbertOp(np.outer(phi, psi.conj()))


def random_op(n: int, rng: np.random.Generator) -> HilbertOp:
    return HilbertOp(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def weyl(ps: PhaseSpace, x) -> HilbertOp:
    """Weyl operator U_(a,b): f(t) -> omega^(b*t) f(t-a).

    Unitary, and U_x U_y = m(x,y) U_{x+y} exactly.
    """
    a, b = ps.point(x)
    n = ps.n
    t = np.arange(n)
    mat = np.zeros((n, n), dtype=complex)
    mat[t, (t - a) % n] = ps.omega ** ((b * t) % n)
    return HilbertOp(mat)


def parity_op(ps: PhaseSpace) -> HilbertOp:
    """Reflection R f(t) = f(-t mod N); R = R* = R^-1 and R U_x R = U_{-x}."""
    n = ps.n
    t = np.arange(n)
    mat = np.zeros((n, n))
    mat[t, (-t) % n] = 1.0
    return HilbertOp(mat)


def op_translate(op: HilbertOp, x) -> HilbertOp:
    """Phase-space translation alpha_x(A) = U_x A U_x*; a *-automorphism."""
    ps = PhaseSpace(op.dim)
    u = weyl(ps, x).matrix
    return HilbertOp(u @ op.matrix @ u.conj().T)


def op_parity(op: HilbertOp) -> HilbertOp:
    """Operator parity beta(A) = R A R; involutive."""
    r = parity_op(PhaseSpace(op.dim)).matrix
    return HilbertOp(r @ op.matrix @ r)


def op_modulate(op: HilbertOp, xi) -> HilbertOp:
    """Operator modulation gamma_xi(B) = U_{-xi/2} B U_{-xi/2}.

    Needs 2 invertible mod N, i.e. odd N; xi/2 is computed with the modular
    inverse of 2.
    """
    n = op.dim
    if n % 2 == 0:
        raise PreconditionError(f"op_modulate needs odd dimension, got N={n}")
    inv2 = pow(2, -1, n)
    ps = PhaseSpace(n)
    p, q = ps.point(xi)
    half = ((-p * inv2) % n, (-q * inv2) % n)
    u = weyl(ps, half).matrix
    return HilbertOp(u @ op.matrix @ u)


def fourier_weyl(op: HilbertOp) -> GroupFunction:
    """Fourier transform of an operator: xi -> Tr(A U_xi).

    Linear, injective, and an isometry from the HS norm into
    L^2(phase space, weight 1/N).
    """
    n = op.dim
    ps = PhaseSpace(n)
    a_mat = op.matrix
    t = np.arange(n)
    vals = np.empty((n, n), dtype=complex)
    for a in range(n):
        # Tr(A U_(a,b)) = sum_t A[t-a, t] omega^(b t): a positive-frequency
        # DFT of the a-th shifted diagonal.
        diag = a_mat[(t - a) % n, t]
        vals[a, :] = np.fft.ifft(diag) * n
    return ps.function(vals.ravel())


def fourier_weyl_inverse(ps: PhaseSpace, values: GroupFunction) -> HilbertOp:
    """Reconstruction A = (1/N) sum_xi F(xi) U_xi*."""
    n = ps.n
    acc = np.zeros((n, n), dtype=complex)
    for x in ps.points():
        acc += values.values[ps.index(x)] * weyl(ps, x).matrix.conj().T
    return HilbertOp(acc / n)


def write_hilbert_op(op: HilbertOp, path, comment: str | None = None) -> None:
    """Dense CSV with header row,col,re,im, row-major order."""
    import csv

    with open(path, "w", newline="") as fh:
        if comment is not None:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh)
        writer.writerow(("row", "col", "re", "im"))
        for r in range(op.dim):
            for c in range(op.dim):
                v = op.matrix[r, c]
                writer.writerow([r, c, f"{v.real:.17g}", f"{v.imag:.17g}"])


def read_hilbert_op(path) -> HilbertOp:
    import csv

    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows or [c.strip() for c in rows[0]] != ["row", "col", "re", "im"]:
        raise ValueError(f"{path}: expected header row,col,re,im")
    entries = [(int(r), int(c), complex(float(re), float(im))) for r, c, re, im in rows[1:]]
    n = max(r for r, _c, _v in entries) + 1 if entries else 0
    mat = np.zeros((n, n), dtype=complex)
    for r, c, v in entries:
        mat[r, c] = v
    return HilbertOp(mat)


def weyl_identity_residuals(n: int) -> dict[str, float]:
    """Exhaustive max residuals of the defining identities at dimension n.

    Keys: 'projective' (U_x U_y = m(x,y) U_{x+y}), 'parity' (R U_x R = U_{-x}),
    'cocycle' (multiplier cocycle relation), 'parity_symmetric'
    (m(x,y) = m(-x,-y)), 'pairing_perfect' (sigma enumerates every character
    of the phase space exactly once).
    """
    ps = PhaseSpace(n)
    pts = ps.points()
    us = {x: weyl(ps, x).matrix for x in pts}
    r = parity_op(ps).matrix

    proj = 0.0
    for x in pts:
        for y in pts:
            lhs = us[x] @ us[y]
            rhs = ps.multiplier(x, y) * us[ps.add(x, y)]
            proj = max(proj, float(np.abs(lhs - rhs).max()))

    par = max(
        float(np.abs(r @ us[x] @ r - us[ps.neg(x)]).max()) for x in pts
    )

    coc = 0.0
    sym = 0.0
    for x in pts:
        for y in pts:
            sym = max(sym, abs(ps.multiplier(x, y) - ps.multiplier(ps.neg(x), ps.neg(y))))
            for z in pts:
                lhs = ps.multiplier(ps.add(x, y), z) * ps.multiplier(x, y)
                rhs = ps.multiplier(x, ps.add(y, z)) * ps.multiplier(y, z)
                coc = max(coc, abs(lhs - rhs))

    # sigma(. , y) as a frequency tuple must hit every character once.
    freqs = set()
    for (c, d) in pts:
        freqs.add(((-d) % n, c % n))
    pairing_ok = 0.0 if len(freqs) == n * n else 1.0

    return {
        "projective": proj,
        "parity": par,
        "cocycle": coc,
        "parity_symmetric": sym,
        "pairing_perfect": pairing_ok,
    }
