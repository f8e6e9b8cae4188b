"""Numeric checks on representations: relations, spans, centers, norms, states."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..graphcore import GeneratorWord, bits, cocycle
from .models import Representation
from .operators import (
    CapExceededError,
    TensorOperator,
    difference,
    operator_norm,
    spectral_norms,
)

__all__ = [
    "RelationReport",
    "TensorGap",
    "PreconditionError",
    "NotUnitaryError",
    "GRAM_RTOL",
    "verify_relations",
    "word_to_operator",
    "all_word_operators",
    "span_dimension",
    "commutant_dimension",
    "center_dimension",
    "min_generator_distance",
    "tensor_gap_bound",
    "state_vanishing_check",
    "full_report",
]

GRAM_RTOL = 1e-8
NULLSPACE_RTOL = 1e-8
EXACT_COMMUTANT_DIM = 32
SPAN_BUDGET = 1 << 24
SPAN_MAX_N = 10


class PreconditionError(ValueError):
    """Inputs do not satisfy the operation's precondition."""


class NotUnitaryError(ValueError):
    pass


# -- relations ----------------------------------------------------------


@dataclass
class RelationReport:
    kind: str
    dim: int
    tolerance: float
    deviations: dict[str, float] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "tolerance": self.tolerance,
            "max_deviation_per_check": dict(self.deviations),
            "failures": list(self.failures),
            "pass": self.passed,
        }


def _dense_generators(rep: Representation) -> list[np.ndarray]:
    if rep.lazy:
        raise CapExceededError("this check needs a dense representation")
    gens = [np.asarray(u) for u in rep.generators]
    # exact +-1/0 entries: real arithmetic is four times cheaper
    if all(not np.any(u.imag) for u in gens):
        gens = [np.ascontiguousarray(u.real) for u in gens]
    return gens


def _deviation(diff, tol: float) -> float:
    """Operator norm of ``diff``; a Frobenius norm below ``tol`` is used as
    an upper bound instead (it dominates the operator norm)."""
    if isinstance(diff, np.ndarray):
        fro = float(np.linalg.norm(diff))
        if fro <= tol:
            return fro
    return operator_norm(diff)


def verify_relations(rep: Representation, tolerance: float | None = None) -> RelationReport:
    """Deviations ``|u - u^*|``, ``|u^2 - 1|`` and ``|uv -+ vu|`` (sign by
    adjacency), each maximized over generators or pairs."""
    tol = rep.tolerance if tolerance is None else tolerance
    report = RelationReport(rep.kind, rep.dim, tol)
    g = rep.graph
    dev = {"self_adjoint": 0.0, "involution": 0.0, "anticommute": 0.0, "commute": 0.0}
    if rep.lazy:
        gens = list(rep.generators)
        ident = TensorOperator.identity(gens[0].n_sites) if gens else None

        def prod(a, b):
            return a @ b

        def adj(a):
            return a.adjoint()
    else:
        gens = _dense_generators(rep)
        ident = np.eye(rep.dim, dtype=gens[0].dtype) if gens else None

        def prod(a, b):
            return a @ b

        def adj(a):
            return a.conj().T

    for v, u in enumerate(gens):
        d = _deviation(difference(u, adj(u)), tol)
        dev["self_adjoint"] = max(dev["self_adjoint"], d)
        if d > tol:
            report.failures.append(f"u{v} not self-adjoint ({d:.3g})")
        d = _deviation(difference(prod(u, u), ident), tol)
        dev["involution"] = max(dev["involution"], d)
        if d > tol:
            report.failures.append(f"u{v}^2 != 1 ({d:.3g})")
    for a, b in combinations(range(len(gens)), 2):
        anti = g.has_edge(a, b)
        sign = -1.0 if anti else 1.0
        d = _deviation(difference(prod(gens[a], gens[b]), prod(gens[b], gens[a]), 1.0, sign), tol)
        key = "anticommute" if anti else "commute"
        dev[key] = max(dev[key], d)
        if d > tol:
            report.failures.append(f"u{a}, u{b} fail to {key} ({d:.3g})")
    report.deviations = dev
    return report


# -- words --------------------------------------------------------------


def word_to_operator(rep: Representation, w: GeneratorWord):
    """``phase * u_{s_1} ... u_{s_m}`` in increasing vertex order."""
    if w.support >> rep.n:
        raise ValueError(f"word {w} uses vertices outside the graph")
    if rep.lazy:
        out = TensorOperator.identity(rep.generators[0].n_sites if rep.generators else 0)
        for v in bits(w.support):
            out = out @ rep.generators[v]
        return out.scaled(w.phase)
    out = np.eye(rep.dim, dtype=complex)
    for v in bits(w.support):
        out = out @ rep.generators[v]
    return w.phase * out


def all_word_operators(rep: Representation) -> np.ndarray:
    """Stack of the ``2^n`` words ``u_s`` (phase +1), indexed by bitmask."""
    n = rep.n
    if n > SPAN_MAX_N or (1 << n) * rep.dim * rep.dim > SPAN_BUDGET:
        raise CapExceededError(f"2^{n} words of dimension {rep.dim} exceed the budget")
    gens = [np.asarray(u, dtype=complex) for u in _dense_generators(rep)]
    out = np.empty((1 << n, rep.dim, rep.dim), dtype=complex)
    out[0] = np.eye(rep.dim)
    for s in range(1, 1 << n):
        top = s.bit_length() - 1
        out[s] = out[s ^ (1 << top)] @ gens[top]
    return out


def _rank(values: np.ndarray, rtol: float) -> int:
    values = np.abs(values)
    if values.size == 0:
        return 0
    top = values.max()
    if top == 0:
        return 0
    return int(np.sum(values > rtol * top))


def span_dimension(rep: Representation) -> int:
    """Rank of the Gram matrix ``tr(w_s^* w_t) / dim`` of all ``2^n`` words.

    Eigenvalues below ``GRAM_RTOL`` times the largest count as zero.
    """
    words = all_word_operators(rep).reshape(1 << rep.n, -1) / np.sqrt(rep.dim)
    gram = words.conj() @ words.T
    return _rank(np.linalg.eigvalsh(gram), GRAM_RTOL)


# -- commutant and center ----------------------------------------------


def _commutator_gram(gens: list[np.ndarray]) -> np.ndarray:
    """``sum_i K_i^* K_i`` with ``K_i vec(X) = vec(u_i X - X u_i)`` (row-major vec)."""
    d = gens[0].shape[0]
    eye = np.eye(d)
    total = np.zeros((d * d, d * d), dtype=complex)
    for u in gens:
        k = np.kron(u, eye) - np.kron(eye, u.T)
        total += k.conj().T @ k
    return total


def _project_commutant(x: np.ndarray, gens: list[np.ndarray], rtol: float = 1e-13, max_cycles: int = 1000) -> np.ndarray:
    """Cycle ``X <- (X + u X u) / 2`` over the generators until stable."""
    for _ in range(max_cycles):
        prev = x
        for u in gens:
            x = 0.5 * (x + u @ x @ u)
        if np.linalg.norm(x - prev) <= rtol * max(np.linalg.norm(x), 1.0):
            return x
    raise RuntimeError("alternating projections did not settle")


def commutant_dimension(rep: Representation, seed: int = 0, block: int = 8) -> int:
    """Dimension of ``{X : X u = u X for every generator}``.

    Up to dimension 32: nullity of the stacked commutator map (eigenvalues
    of its Gram matrix below ``NULLSPACE_RTOL`` times the largest are zero).
    Larger: random matrices are projected onto the commutant by cycling
    the projections ``X -> (X + u X u)/2`` and the span of the results is
    grown block by block until a block adds nothing new.
    """
    gens = [np.asarray(u, dtype=complex) for u in _dense_generators(rep)]
    d = rep.dim
    if not gens:
        return d * d
    if d <= EXACT_COMMUTANT_DIM:
        ev = np.linalg.eigvalsh(_commutator_gram(gens))
        top = max(float(ev.max()), 1.0)
        return int(np.sum(ev <= NULLSPACE_RTOL * top))
    rng = np.random.default_rng(seed)
    basis = np.zeros((0, d * d), dtype=complex)
    while True:
        added = 0
        for _ in range(block):
            x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            y = _project_commutant(x, gens).reshape(-1)
            size = np.linalg.norm(y)
            for _ in range(2):
                y = y - basis.T @ (basis.conj() @ y)
            if np.linalg.norm(y) > NULLSPACE_RTOL * max(size, 1.0):
                basis = np.vstack([basis, y / np.linalg.norm(y)])
                added += 1
        if added < block or basis.shape[0] >= d * d:
            return basis.shape[0]


def center_dimension(rep: Representation) -> int:
    """Dimension of (span of words) intersected with the commutant.

    An orthonormal basis ``B_c`` of the word span is taken from an SVD; the
    center is the null space of ``c -> (u_i B_c - B_c u_i)_i``.
    """
    n_words = 1 << rep.n
    words = all_word_operators(rep).reshape(n_words, -1)
    _, sv, vh = np.linalg.svd(words, full_matrices=False)
    r = _rank(sv, GRAM_RTOL)
    basis = vh[:r].reshape(r, rep.dim, rep.dim)
    gens = [np.asarray(u, dtype=complex) for u in _dense_generators(rep)]
    if not gens or r == 0:
        return r
    blocks = [(u @ basis - basis @ u).reshape(r, -1) for u in gens]
    constraint = np.concatenate(blocks, axis=1)
    cs = np.linalg.svd(constraint, compute_uv=False)
    top = max(float(cs.max()) if cs.size else 0.0, 1.0)
    return r - int(np.sum(cs > NULLSPACE_RTOL * top))


# -- norms --------------------------------------------------------------


def min_generator_distance(rep: Representation) -> tuple[float, tuple[int, int]]:
    """Smallest ``|u_x - u_y|`` over distinct generators, with the pair."""
    if rep.n < 2:
        raise PreconditionError("need at least two generators")
    gens = rep.generators if rep.lazy else _dense_generators(rep)
    best = (np.inf, (-1, -1))
    for a, b in combinations(range(rep.n), 2):
        d = operator_norm(difference(gens[a], gens[b]))
        if d < best[0]:
            best = (d, (a, b))
    return best


@dataclass(frozen=True)
class TensorGap:
    """``lhs = |a (x) v - b (x) w|``; ``rhs`` = grid minimum of ``|lambda a - b|``
    over ``samples`` equally spaced unimodular ``lambda``; ``slack`` bounds how
    far the grid minimum can exceed the minimum over the whole circle;
    ``spectral`` = max of ``|lambda a - b|`` over the spectrum of ``w^* v``,
    which is also a lower bound for ``lhs``."""

    lhs: float
    rhs: float
    slack: float
    spectral: float
    samples: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs - self.slack

    def as_dict(self) -> dict:
        return {
            "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack,
            "spectral": self.spectral, "samples": self.samples, "holds": self.holds,
        }


def _check_unitary(u: np.ndarray, name: str, tol: float) -> None:
    dev = np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]))
    if dev > tol:
        raise NotUnitaryError(f"{name} is not unitary (deviation {dev:.3g})")


def tensor_gap_bound(a, b, v, w, samples: int = 360, tolerance: float = 1e-10) -> TensorGap:
    a, b, v, w = (np.atleast_2d(np.asarray(x, dtype=complex)) for x in (a, b, v, w))
    if a.shape != b.shape or v.shape != w.shape:
        raise ValueError("a, b and v, w must have matching shapes")
    if samples < 1:
        raise ValueError("need at least one sample")
    _check_unitary(v, "v", tolerance)
    _check_unitary(w, "w", tolerance)
    lhs = operator_norm(np.kron(a, v) - np.kron(b, w))
    lam = np.exp(2j * np.pi * np.arange(samples) / samples)
    rhs = float(spectral_norms(lam[:, None, None] * a[None] - b[None]).min())
    norm_a = float(spectral_norms(a[None])[0])
    norm_b = float(spectral_norms(b[None])[0])
    # any point of the circle is within angle pi/samples of a grid point
    slack = norm_a * 2 * np.sin(np.pi / (2 * samples)) + 1e-9 * (1 + norm_a + norm_b)
    spec = np.linalg.eigvals(w.conj().T @ v)
    spec = spec / np.abs(spec)
    spectral = float(spectral_norms(spec[:, None, None] * a[None] - b[None]).max())
    return TensorGap(lhs, rhs, float(slack), spectral, samples)


# -- states -------------------------------------------------------------


def state_vanishing_check(
    rep: Representation, u_index: int, word: GeneratorWord, samples: int = 16, seed: int = 0
) -> float:
    """``max |<b xi, xi>|`` over eigenvectors ``xi`` of ``u = u_{u_index}``,
    where ``b`` is the operator of ``word``; ``b`` must anticommute with ``u``.

    Dense mode uses a full eigenbasis of ``u``; lazy mode uses ``samples``
    random vectors in each eigenspace, ``xi = (1 +- u) eta``.
    """
    if not 0 <= u_index < rep.n:
        raise ValueError(f"generator {u_index} out of range")
    if cocycle(rep.graph, 1 << u_index, word.support) != -1:
        raise PreconditionError(f"word {word} commutes with u{u_index}")
    u = rep.generators[u_index]
    b = word_to_operator(rep, word)
    if not rep.lazy:
        u = np.asarray(u, dtype=complex)
        anti = np.linalg.norm(u @ b + b @ u)
        if anti > 1e-9:
            raise PreconditionError(f"operators do not anticommute (deviation {anti:.3g})")
        _, vecs = np.linalg.eigh(u)
        vals = np.einsum("ij,ij->j", vecs.conj(), b @ vecs)
        return float(np.abs(vals).max())
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        eta = rng.standard_normal(rep.dim) + 1j * rng.standard_normal(rep.dim)
        ue = u.matvec(eta)
        anti = np.linalg.norm(u.matvec(b.matvec(eta)) + b.matvec(ue))
        if anti > 1e-9 * np.linalg.norm(eta):
            raise PreconditionError(f"operators do not anticommute (deviation {anti:.3g})")
        for xi in (eta + ue, eta - ue):
            nx = np.linalg.norm(xi)
            if nx == 0:
                continue
            xi = xi / nx
            worst = max(worst, float(abs(np.vdot(xi, b.matvec(xi)))))
    return worst


# -- combined report ----------------------------------------------------


def full_report(rep: Representation) -> dict:
    """Report with the shared schema; quantities out of budget are ``None``."""
    rel = verify_relations(rep)

    def attempt(fn):
        try:
            return fn(rep)
        except CapExceededError:
            return None

    distance = None
    if rep.n >= 2:
        distance = min_generator_distance(rep)[0]
    return {
        "kind": rep.kind,
        "dim": rep.dim,
        "tolerance": rep.tolerance,
        "max_deviation_per_check": rel.deviations,
        "failures": rel.failures,
        "span_dim": attempt(span_dimension),
        "center_dim": attempt(center_dimension),
        "commutant_dim": attempt(commutant_dimension),
        "min_pair_distance": distance,
        "pass": rel.passed,
    }
