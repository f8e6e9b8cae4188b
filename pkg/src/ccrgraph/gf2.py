"""Bit-packed linear algebra over GF(2).

Rows of a :class:`BitMatrix` are packed little-endian into ``uint64`` words:
column ``c`` lives in word ``c >> 6`` at bit ``c & 63``.  Bit vectors that
cross the module boundary (kernel vectors, single rows) are plain Python
integers with bit ``c`` holding coordinate ``c``.

Besides rank, kernel and inversion, the module canonicalizes alternating
forms under congruence (``S^T A S``).  The graph code reaches the same
canonical form by switch moves; this module is the independent check.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "BasisChange",
    "SingularMatrixError",
    "NotAlternatingError",
    "rank",
    "kernel_basis",
    "congruent_canonicalize",
    "hyperbolic_form",
    "multiply",
    "transpose",
    "invert",
    "random_alternating",
]

_ONE = np.uint64(1)

# When set, congruent_canonicalize recomputes S^T A S on every call.
VERIFY = os.environ.get("CCRGRAPH_VERIFY", "") == "1"


class SingularMatrixError(ValueError):
    """Raised when inverting a matrix that has no inverse over GF(2)."""


class NotAlternatingError(ValueError):
    """Raised when a matrix is not symmetric with zero diagonal."""


def _n_words(n_cols: int) -> int:
    return max(1, (n_cols + 63) >> 6)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """Immutable GF(2) matrix with rows packed into 64-bit words."""

    n_rows: int
    n_cols: int
    words: np.ndarray

    def __post_init__(self):
        w = _n_words(self.n_cols)
        if self.words.shape != (self.n_rows, w) or self.words.dtype != np.uint64:
            raise ValueError(
                f"words must be uint64 of shape {(self.n_rows, w)}, "
                f"got {self.words.dtype} {self.words.shape}"
            )
        tail = self.n_cols & 63
        if self.n_rows and (tail or self.n_cols == 0):
            mask = np.uint64((1 << tail) - 1) if self.n_cols else np.uint64(0)
            if np.any(self.words[:, -1] & ~mask):
                raise ValueError("pad bits beyond n_cols must be zero")
        if self.words.flags.writeable:
            object.__setattr__(self, "words", _freeze(self.words.copy()))

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int | None = None) -> "BitMatrix":
        n_cols = n_rows if n_cols is None else n_cols
        return cls(n_rows, n_cols, np.zeros((n_rows, _n_words(n_cols)), np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        words = np.zeros((n, _n_words(n)), np.uint64)
        idx = np.arange(n)
        words[idx, idx >> 6] = _ONE << (idx & 63).astype(np.uint64)
        return cls(n, n, words)

    @classmethod
    def from_dense(cls, a) -> "BitMatrix":
        """Pack a 2-D array of 0/1 entries (any integer or bool dtype)."""
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-D array")
        n_rows, n_cols = a.shape
        bits = (a.astype(np.uint8) & 1) if a.size else a.astype(np.uint8)
        packed = np.packbits(bits, axis=1, bitorder="little")
        words = np.zeros((n_rows, _n_words(n_cols)), np.uint64)
        if n_rows and packed.shape[1]:
            words.view(np.uint8)[:, : packed.shape[1]] = packed
        return cls(n_rows, n_cols, words)

    @classmethod
    def from_int_rows(cls, rows: Sequence[int], n_cols: int) -> "BitMatrix":
        """Build from Python-int bitsets, bit ``c`` of ``rows[i]`` = entry (i, c)."""
        w = _n_words(n_cols)
        nbytes = 8 * w
        limit = 1 << n_cols
        buf = bytearray()
        for r in rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {n_cols} columns")
            buf += int(r).to_bytes(nbytes, "little")
        words = np.frombuffer(bytes(buf), dtype="<u8").astype(np.uint64)
        return cls(len(rows), n_cols, words.reshape(len(rows), w))

    # -- views --------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        """Unpack to a ``uint8`` array of shape ``(n_rows, n_cols)``."""
        if self.n_rows == 0 or self.n_cols == 0:
            return np.zeros((self.n_rows, self.n_cols), np.uint8)
        as_bytes = np.ascontiguousarray(self.words).view(np.uint8)
        return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, : self.n_cols]

    def row(self, i: int) -> int:
        return int.from_bytes(self.words[i].astype("<u8").tobytes(), "little")

    def int_rows(self) -> list[int]:
        return [self.row(i) for i in range(self.n_rows)]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= j < self.n_cols):
            raise IndexError(j)
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & _ONE)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def T(self) -> "BitMatrix":
        return transpose(self)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def is_alternating(self) -> bool:
        if not self.is_square():
            return False
        d = self.to_dense()
        return bool(np.array_equal(d, d.T) and not d.diagonal().any())

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        return multiply(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, self.words.tobytes()))

    def __repr__(self) -> str:
        body = "\n".join("".join(map(str, r)) for r in self.to_dense())
        return f"BitMatrix({self.n_rows}x{self.n_cols})\n{body}"


@dataclass(frozen=True)
class BasisChange:
    """An invertible ``forward`` together with its ``inverse``."""

    forward: BitMatrix
    inverse: BitMatrix

    def __post_init__(self):
        f, g = self.forward, self.inverse
        if not (f.is_square() and g.shape == f.shape):
            raise ValueError("basis change needs two square matrices of equal size")

    @classmethod
    def identity(cls, n: int) -> "BasisChange":
        eye = BitMatrix.identity(n)
        return cls(eye, eye)

    @property
    def n(self) -> int:
        return self.forward.n_rows

    def check(self) -> bool:
        return multiply(self.forward, self.inverse) == BitMatrix.identity(self.n)


# -- elimination kernel -----------------------------------------------


def _column_bits(words: np.ndarray, col: int, start: int = 0) -> np.ndarray:
    return (words[start:, col >> 6] >> np.uint64(col & 63)) & _ONE


def _eliminate(words: np.ndarray, n_cols: int, full: bool) -> list[int]:
    """Row-reduce ``words`` in place; return the pivot columns.

    With ``full`` the result is reduced row echelon form (Gauss-Jordan);
    otherwise only rows below each pivot are cleared, which suffices for rank.
    """
    n_rows = words.shape[0]
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        w = c >> 6
        hits = np.flatnonzero(_column_bits(words, c, r))
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            words[[r, p]] = words[[p, r]]
        # hits[0] is the first row with bit c, so the row swapped to p had it clear
        below = r + hits[1:]
        if full and r:
            above = np.flatnonzero(_column_bits(words[:r], c))
            if above.size:
                below = np.concatenate([above, below])
        if below.size:
            words[below, w:] ^= words[r, w:]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: BitMatrix) -> int:
    """GF(2) row rank; ``m`` is left untouched."""
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    return len(_eliminate(m.words.copy(), m.n_cols, full=False))


def _rref(m: BitMatrix) -> tuple[np.ndarray, list[int]]:
    words = m.words.copy()
    pivots = _eliminate(words, m.n_cols, full=True) if m.n_rows and m.n_cols else []
    return words, pivots


def kernel_basis(m: BitMatrix) -> list[int]:
    """Basis of ``{x : m x = 0}`` as integer bitsets over the columns.

    One vector per free column ``f``: bit ``f`` set, plus the pivot columns
    whose reduced rows contain ``f``.  The count is ``n_cols - rank(m)``.
    """
    words, pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.n_cols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = 1 << f
        if pivots:
            bits = _column_bits(words[: len(pivots)], f)
            for i in np.flatnonzero(bits):
                vec |= 1 << pivots[int(i)]
        basis.append(vec)
    return basis


# -- products, transpose, inverse ---------------------------------------


def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.n_cols != b.n_rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.n_rows, _n_words(b.n_cols)), np.uint64)
    if a.n_rows and a.n_cols and b.n_cols:
        for c in range(a.n_cols):
            sel = _column_bits(a.words, c).astype(bool)
            if sel.any():
                out[sel] ^= b.words[c]
    return BitMatrix(a.n_rows, b.n_cols, out)


def transpose(m: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense(m.to_dense().T)


def invert(m: BitMatrix) -> BitMatrix:
    """Two-sided inverse; :class:`SingularMatrixError` if ``m`` is singular."""
    if not m.is_square():
        raise ValueError(f"cannot invert non-square {m.shape} matrix")
    n = m.n_rows
    if n == 0:
        return m
    dense = np.concatenate([m.to_dense(), np.eye(n, dtype=np.uint8)], axis=1)
    aug = BitMatrix.from_dense(dense)
    words = aug.words.copy()
    pivots = _eliminate(words, n, full=True)
    if len(pivots) < n:
        raise SingularMatrixError(f"matrix has rank {len(pivots)} < {n}")
    right = BitMatrix(n, 2 * n, words).to_dense()[:, n:]
    return BitMatrix.from_dense(right)


# -- congruence canonicalization ----------------------------------------


def hyperbolic_form(n: int, k: int) -> BitMatrix:
    """``k`` blocks [[0,1],[1,0]] on the leading diagonal of an n x n zero matrix."""
    if 2 * k > n:
        raise ValueError(f"{k} hyperbolic blocks do not fit in {n} dimensions")
    d = np.zeros((n, n), np.uint8)
    for j in range(k):
        d[2 * j, 2 * j + 1] = d[2 * j + 1, 2 * j] = 1
    return BitMatrix.from_dense(d)


def _swap_columns(words: np.ndarray, i: int, j: int) -> None:
    bi = _column_bits(words, i)
    bj = _column_bits(words, j)
    diff = (bi ^ bj).astype(bool)
    if diff.any():
        words[diff, i >> 6] ^= _ONE << np.uint64(i & 63)
        words[diff, j >> 6] ^= _ONE << np.uint64(j & 63)


def _swap(a: np.ndarray, s: np.ndarray, si: np.ndarray, i: int, j: int) -> None:
    """Exchange basis vectors i and j (rows+columns of a, columns of s, rows of si)."""
    if i == j:
        return
    a[[i, j]] = a[[j, i]]
    _swap_columns(a, i, j)
    _swap_columns(s, i, j)
    si[[i, j]] = si[[j, i]]


def _congruent_small(rows: list[int], n: int) -> tuple[int, list[int], list[int]]:
    """Same reduction as the packed path, on Python-int rows (n <= 64).

    Returns ``k`` and the rows of ``S`` and ``S^{-1}``.
    """
    a = list(rows)
    s = [1 << i for i in range(n)]
    si = list(s)

    def swap(i: int, j: int) -> None:
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        si[i], si[j] = si[j], si[i]
        for m in (a, s):
            for r in range(n):
                x = m[r]
                if ((x >> i) ^ (x >> j)) & 1:
                    m[r] = x ^ ((1 << i) | (1 << j))

    t = 0
    while 2 * t + 1 < n:
        lo = 2 * t
        p = next((r for r in range(lo, n) if a[r]), None)
        if p is None:
            break
        q = (a[p] & -a[p]).bit_length() - 1
        swap(p, lo)
        if q == lo:
            q = p
        swap(q, lo + 1)
        p, q = lo, lo + 1
        mask_q = a[q] & ~(1 << p)
        mask_p = a[p] & ~(1 << q)
        if mask_q or mask_p:
            for m in (a, s):
                for r in range(n):
                    x = m[r]
                    if (x >> p) & 1:
                        x ^= mask_q
                    if (x >> q) & 1:
                        x ^= mask_p
                    m[r] = x
            for r in _bits_to_index(mask_q):
                a[r] ^= a[p]
                si[p] ^= si[r]
            for r in _bits_to_index(mask_p):
                a[r] ^= a[q]
                si[q] ^= si[r]
        t += 1
    return t, s, si


def congruent_canonicalize(a: BitMatrix, verify: bool | None = None) -> tuple[int, BasisChange]:
    """Reduce an alternating form to ``k`` hyperbolic blocks.

    Returns ``(k, s)`` with ``s.forward.T @ a @ s.forward == hyperbolic_form(n, k)``.
    At each step a pair ``(p, q)`` with ``a[p, q] = 1`` is moved to positions
    ``(2t, 2t+1)`` and every other basis vector ``e_r`` is replaced by
    ``e_r + a[r,q] e_p + a[r,p] e_q``, which clears row and column p and q.
    """
    if not a.is_square():
        raise NotAlternatingError(f"alternating form must be square, got {a.shape}")
    if not a.is_alternating():
        raise NotAlternatingError("matrix must be symmetric with zero diagonal")
    n = a.n_rows
    if n == 0:
        return 0, BasisChange.identity(0)

    if n <= 64:
        t, s_rows, si_rows = _congruent_small(a.int_rows(), n)
        basis = BasisChange(BitMatrix.from_int_rows(s_rows, n), BitMatrix.from_int_rows(si_rows, n))
        return _checked(a, t, basis, verify)

    work = a.words.copy()
    s = BitMatrix.identity(n).words.copy()
    si = s.copy()
    t = 0
    while 2 * t + 1 < n:
        lo = 2 * t
        nz = np.flatnonzero(work[lo:].any(axis=1))
        if nz.size == 0:
            break
        p = lo + int(nz[0])
        row = BitMatrix(1, n, work[p : p + 1]).row(0)
        q = (row & -row).bit_length() - 1
        _swap(work, s, si, p, lo)
        if q == lo:
            q = p
        _swap(work, s, si, q, lo + 1)
        p, q = lo, lo + 1

        row_p = work[p].copy()
        row_q = work[q].copy()
        # M_q = {r != p,q : a[r,q] = 1}, M_p = {r != p,q : a[r,p] = 1}
        mask_q = row_q.copy()
        mask_p = row_p.copy()
        mask_q[p >> 6] &= ~(_ONE << np.uint64(p & 63))
        mask_p[q >> 6] &= ~(_ONE << np.uint64(q & 63))
        rq = BitMatrix(1, n, mask_q[None, :]).row(0)
        rp = BitMatrix(1, n, mask_p[None, :]).row(0)
        if rq or rp:
            # column operations A <- A E
            col_p = _column_bits(work, p).astype(bool)
            col_q = _column_bits(work, q).astype(bool)
            work[col_p] ^= mask_q
            work[col_q] ^= mask_p
            # row operations A <- E^T (A E)
            sel_q = _bits_to_index(rq)
            sel_p = _bits_to_index(rp)
            work[sel_q] ^= work[p]
            work[sel_p] ^= work[q]
            # S <- S E: col_r += col_p (r in M_q), col_r += col_q (r in M_p)
            s_p = _column_bits(s, p).astype(bool)
            s_q = _column_bits(s, q).astype(bool)
            s[s_p] ^= mask_q
            s[s_q] ^= mask_p
            # S^{-1} <- E S^{-1}, with E^{-1} = E
            if sel_q.size:
                si[p] ^= np.bitwise_xor.reduce(si[sel_q], axis=0)
            if sel_p.size:
                si[q] ^= np.bitwise_xor.reduce(si[sel_p], axis=0)
        t += 1

    return _checked(a, t, BasisChange(BitMatrix(n, n, s), BitMatrix(n, n, si)), verify)


def _checked(a: BitMatrix, k: int, basis: BasisChange, verify: bool | None) -> tuple[int, BasisChange]:
    if VERIFY if verify is None else verify:
        fwd = basis.forward
        if multiply(multiply(fwd.T, a), fwd) != hyperbolic_form(a.n_rows, k):
            raise AssertionError("congruence check failed: S^T A S is not canonical")
        if not basis.check():
            raise AssertionError("congruence check failed: inverse mismatch")
    return k, basis


def _bits_to_index(x: int) -> np.ndarray:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return np.asarray(out, dtype=np.intp)


def random_alternating(n: int, rng: np.random.Generator, density: float = 0.5) -> BitMatrix:
    """Random symmetric zero-diagonal matrix; each upper entry is 1 w.p. ``density``."""
    upper = np.triu(rng.random((n, n)) < density, 1)
    return BitMatrix.from_dense(upper | upper.T)


def from_vectors(vectors: Iterable[int], n_cols: int) -> BitMatrix:
    return BitMatrix.from_int_rows(list(vectors), n_cols)
