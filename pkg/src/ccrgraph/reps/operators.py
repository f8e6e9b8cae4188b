"""Dense and factorised operators, and the power-iteration norm."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Union

import numpy as np
from scipy.sparse.linalg import LinearOperator, aslinearoperator

from ..graphcore import SizeLimitError

__all__ = [
    "DIM_CAP",
    "NORM_RTOL",
    "ConvergenceError",
    "CapExceededError",
    "TensorOperator",
    "PAULI_I",
    "PAULI_Z",
    "PAULI_X",
    "as_operator",
    "operator_norm",
    "spectral_norms",
    "difference",
]

DIM_CAP = 4096
NORM_RTOL = 1e-10
NORM_MAX_ITER = 10_000

PAULI_I = np.eye(2, dtype=complex)
PAULI_Z = np.diag([1.0, -1.0]).astype(complex)
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


class ConvergenceError(RuntimeError):
    """Power iteration did not settle within the iteration cap."""


class CapExceededError(SizeLimitError):
    """Requested dimension or workload is above the configured cap."""


def as_operator(a, cap: int = DIM_CAP) -> np.ndarray:
    """Validate and return a dense square complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"operator must be square, got shape {m.shape}")
    if m.shape[0] > cap:
        raise CapExceededError(f"dimension {m.shape[0]} exceeds cap {cap}")
    if not np.all(np.isfinite(m)):
        raise ValueError("operator has non-finite entries")
    return m


@dataclass(frozen=True)
class TensorOperator:
    """``phase * (f_0 (x) f_1 (x) ... (x) f_{q-1})`` on ``(C^2)^{(x) q}``.

    Only non-identity factors are stored (``site -> 2x2 matrix``).  Site 0
    is the most significant tensor factor, matching ``np.kron`` order.
    """

    n_sites: int
    factors: tuple[tuple[int, np.ndarray], ...] = ()
    phase: complex = 1.0

    @classmethod
    def identity(cls, n_sites: int) -> "TensorOperator":
        return cls(n_sites)

    @classmethod
    def from_sites(cls, n_sites: int, sites: dict[int, np.ndarray], phase: complex = 1.0) -> "TensorOperator":
        for s in sites:
            if not 0 <= s < n_sites:
                raise ValueError(f"site {s} out of range")
        return cls(n_sites, tuple(sorted(sites.items())), complex(phase))

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    @property
    def shape(self) -> tuple[int, int]:
        return (self.dim, self.dim)

    def site_dict(self) -> dict[int, np.ndarray]:
        return dict(self.factors)

    def __matmul__(self, other):
        if isinstance(other, TensorOperator):
            if other.n_sites != self.n_sites:
                raise ValueError("site counts differ")
            mine = self.site_dict()
            for s, f in other.factors:
                mine[s] = mine[s] @ f if s in mine else f
            return TensorOperator.from_sites(self.n_sites, mine, self.phase * other.phase)
        return self.matvec(np.asarray(other))

    def scaled(self, c: complex) -> "TensorOperator":
        return TensorOperator(self.n_sites, self.factors, self.phase * c)

    def adjoint(self) -> "TensorOperator":
        return TensorOperator(
            self.n_sites, tuple((s, f.conj().T) for s, f in self.factors), np.conj(self.phase)
        )

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """Apply to a vector (or a batch, vectors as columns)."""
        v = np.asarray(v, dtype=complex)
        batch = v.ndim == 2
        cols = v.shape[1] if batch else 1
        t = v.reshape((2,) * self.n_sites + (cols,))
        for s, f in self.factors:
            t = np.moveaxis(np.tensordot(f, t, axes=([1], [s])), 0, s)
        out = self.phase * t.reshape(self.dim, cols)
        return out if batch else out[:, 0]

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        return self.adjoint().matvec(v)

    def to_dense(self, cap: int = DIM_CAP) -> np.ndarray:
        if self.dim > cap:
            raise CapExceededError(f"dimension {self.dim} exceeds cap {cap}")
        sites = self.site_dict()
        mats = [sites.get(s, PAULI_I) for s in range(self.n_sites)]
        return self.phase * reduce(np.kron, mats, np.eye(1, dtype=complex))

    def as_linear_operator(self) -> LinearOperator:
        return LinearOperator(
            self.shape, matvec=self.matvec, rmatvec=self.rmatvec,
            matmat=self.matvec, dtype=complex,
        )


Op = Union[np.ndarray, TensorOperator, LinearOperator]


def _linear(op: Op) -> LinearOperator:
    if isinstance(op, TensorOperator):
        return op.as_linear_operator()
    if isinstance(op, LinearOperator):
        return op
    return aslinearoperator(np.asarray(op, dtype=complex))


def difference(a: Op, b: Op, alpha: complex = 1.0, beta: complex = 1.0) -> Op:
    """``alpha * a - beta * b``; dense when both inputs are dense."""
    if isinstance(a, np.ndarray) and isinstance(b, np.ndarray):
        return alpha * a - beta * b
    return alpha * _linear(a) - beta * _linear(b)


def operator_norm(
    op: Op,
    rtol: float = NORM_RTOL,
    max_iter: int = NORM_MAX_ITER,
    seed: int = 0,
) -> float:
    """Largest singular value by power iteration on ``op^* op``.

    Iterates ``x <- op^* op x / |op^* op x|`` from a seeded random start and
    stops once ``|op x|`` changes by at most ``rtol`` relative.  The
    estimate never exceeds the true norm.
    """
    if isinstance(op, np.ndarray):
        a = np.asarray(op, dtype=complex)
        n = a.shape[1]
        if n == 0:
            return 0.0
        fwd, adj = a.__matmul__, a.conj().T.__matmul__
    else:
        lin = _linear(op)
        n = lin.shape[1]
        if n == 0:
            return 0.0
        fwd, adj = lin.matvec, lin.rmatvec
    rng = np.random.default_rng(seed)
    zero_starts = 0
    x = None
    while x is None:
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        x /= np.linalg.norm(x)
        if np.linalg.norm(fwd(x)) == 0.0:
            # a generic start only vanishes under the zero operator
            zero_starts += 1
            if zero_starts >= 2:
                return 0.0
            x = None
    sigma = 0.0
    for _ in range(max_iter):
        y = fwd(x)
        new = float(np.linalg.norm(y))
        if new == 0.0:
            return 0.0
        if abs(new - sigma) <= rtol * new:
            return new
        sigma = new
        z = adj(y)
        nz = np.linalg.norm(z)
        if nz == 0.0:
            return sigma
        x = z / nz
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps (last estimate {sigma})")


def spectral_norms(batch: np.ndarray) -> np.ndarray:
    """Exact operator norms of a stack of small matrices, shape ``(N, d, d)``."""
    return np.linalg.svd(np.asarray(batch, dtype=complex), compute_uv=False)[..., 0]
