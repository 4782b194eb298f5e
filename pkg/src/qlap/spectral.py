"""Adjacency, Laplacian and signless Laplacian spectra.

Eigenvalues come from a cyclic Jacobi solver that works on a stack of
matrices at once, so thousands of small graphs can be diagonalised in one
call.  Closed forms for the spectra of blowups and of their complements are
evaluated from the spectrum of the base graph only.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, ParameterError
from .graph import Graph, complement

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100


class MatrixKind(str, Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless_laplacian"

    @classmethod
    def parse(cls, text: "str | MatrixKind") -> "MatrixKind":
        if isinstance(text, MatrixKind):
            return text
        key = text.strip().lower().replace("-", "_")
        aliases = {"a": cls.ADJACENCY, "l": cls.LAPLACIAN, "q": cls.SIGNLESS_LAPLACIAN, "signless": cls.SIGNLESS_LAPLACIAN}
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise ParameterError(f"unknown matrix kind {text!r}") from None


def format_value(v: float) -> str:
    if abs(v) < 1e-12:
        v = 0.0
    return f"{v:.12g}"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, sorted descending."""

    values: tuple[float, ...]
    grouping_tol: float = 1e-6

    @classmethod
    def from_values(cls, values: Sequence[float], grouping_tol: float = 1e-6) -> "Spectrum":
        return cls(tuple(sorted((float(v) for v in values), reverse=True)), grouping_tol)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def ascending(self) -> tuple[float, ...]:
        """The ascending view (the usual convention for Laplacian eigenvalues)."""
        return self.values[::-1]

    @property
    def min(self) -> float:
        return self.values[-1]

    @property
    def max(self) -> float:
        return self.values[0]

    def multiplicities(self) -> list[tuple[float, int]]:
        """Group consecutive values closer than ``grouping_tol``; for display only."""
        groups: list[list[float]] = []
        for v in self.values:
            if groups and abs(groups[-1][0] - v) <= self.grouping_tol:
                groups[-1].append(v)
            else:
                groups.append([v])
        return [(sum(g) / len(g), len(g)) for g in groups]

    def max_abs_diff(self, other: "Spectrum | Sequence[float]") -> float:
        theirs = other.values if isinstance(other, Spectrum) else tuple(sorted(other, reverse=True))
        if len(theirs) != len(self.values):
            return math.inf
        return max((abs(a - b) for a, b in zip(self.values, theirs)), default=0.0)

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def to_tsv(self) -> str:
        return "\t".join(format_value(v) for v in self.values)


# -- eigensolver -------------------------------------------------------------


def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    off = a.copy()
    off[..., np.arange(n), np.arange(n)] = 0.0
    return np.sqrt(np.einsum("bij,bij->b", off, off))


def _jacobi_sweeps(a: np.ndarray, norm: np.ndarray, tol: float, max_sweeps: int) -> None:
    """Diagonalise the stack ``a`` (shape ``(B, n, n)``) in place."""
    n = a.shape[-1]
    # entries below this cannot keep the off-diagonal norm above tol * norm
    skip = tol * norm / n
    for _ in range(max_sweeps):
        off = _offdiag_norm(a)
        active = off > tol * norm
        if not active.any():
            return
        idx = np.flatnonzero(active)
        work = a[idx]
        wskip = skip[idx]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[:, p, q].copy()
                small = np.abs(apq) <= wskip
                if small.all():
                    continue
                app = work[:, p, p].copy()
                aqq = work[:, q, q].copy()
                safe = np.where(small, 1.0, apq)
                theta = (aqq - app) / (2.0 * safe)
                t = np.where(theta >= 0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(small, 0.0, t)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = work[:, p, :].copy()
                rq = work[:, q, :]
                newp = c[:, None] * rp - s[:, None] * rq
                newq = s[:, None] * rp + c[:, None] * rq
                work[:, p, :] = newp
                work[:, q, :] = newq
                work[:, :, p] = newp
                work[:, :, q] = newq
                work[:, p, p] = app - t * apq
                work[:, q, q] = aqq + t * apq
                kept = np.where(small, apq, 0.0)
                work[:, p, q] = kept
                work[:, q, p] = kept
        a[idx] = work
    off = _offdiag_norm(a)
    bad = off > tol * norm
    if bad.any():
        worst = float(np.max(off[bad] / np.maximum(norm[bad], 1e-300)))
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", worst)


def _jacobi_single(a: np.ndarray, norm: float, tol: float, max_sweeps: int) -> None:
    """Same rotations as ``_jacobi_sweeps`` for one 2-D matrix, with scalar bookkeeping."""
    n = a.shape[0]
    skip = tol * norm / n
    target = tol * norm
    for _ in range(max_sweeps):
        if _offdiag_norm(a[None])[0] <= target:
            return
        for p in range(n - 1):
            row = a[p]
            for q in range(p + 1, n):
                apq = float(row[q])
                if abs(apq) <= skip:
                    continue
                app = float(a[p, p])
                aqq = float(a[q, q])
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = row.copy()
                rq = a[q].copy()
                row *= c
                row -= s * rq
                rq *= c
                rq += s * rp
                a[q] = rq
                a[:, p] = row
                a[:, q] = rq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
    off = _offdiag_norm(a[None])[0]
    if off > target:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", off / max(norm, 1e-300))


def jacobi_eigenvalues(matrices: np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of one symmetric matrix or a stack of them, each row sorted descending.

    Cyclic Jacobi: rotations visit pairs ``(p, q)`` row by row until the
    off-diagonal Frobenius norm is at most ``tol`` times the full norm.
    Raises ``ConvergenceError`` after ``max_sweeps`` sweeps.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    arr = np.asarray(matrices, dtype=np.float64)
    single = arr.ndim == 2
    if single:
        arr = arr[None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[1] < 1:
        raise ParameterError(f"expected square matrices, got shape {np.shape(matrices)}")
    if not np.array_equal(arr, np.swapaxes(arr, 1, 2)):
        raise ParameterError("matrix is not exactly symmetric")
    a = arr.copy()
    norm = np.sqrt(np.einsum("bij,bij->b", a, a))
    if a.shape[1] > 1:
        if a.shape[0] == 1:
            _jacobi_single(a[0], float(norm[0]), tol, max_sweeps)
        else:
            _jacobi_sweeps(a, norm, tol, max_sweeps)
    n = a.shape[1]
    vals = -np.sort(-a[:, np.arange(n), np.arange(n)], axis=1)
    return vals[0] if single else vals


def eigenvalues_symmetric(m: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    return Spectrum.from_values(jacobi_eigenvalues(m, tol))


# -- graph matrices ----------------------------------------------------------


def matrix_of(g: Graph, kind: MatrixKind | str) -> np.ndarray:
    """Integer matrix A, L = D - A or Q = D + A of ``g``."""
    kind = MatrixKind.parse(kind)
    a = g.adjacency_matrix()
    if kind is MatrixKind.ADJACENCY:
        return a
    d = np.diag(np.asarray(g.degrees, dtype=np.int64))
    return d - a if kind is MatrixKind.LAPLACIAN else d + a


def matrices_from_adjacency(adj: np.ndarray, kind: MatrixKind | str) -> np.ndarray:
    """Vectorised ``matrix_of`` over a stack of 0/1 adjacency matrices."""
    kind = MatrixKind.parse(kind)
    if kind is MatrixKind.ADJACENCY:
        return adj
    n = adj.shape[-1]
    out = (-adj if kind is MatrixKind.LAPLACIAN else adj).copy()
    out[..., np.arange(n), np.arange(n)] += adj.sum(axis=-1)
    return out


def matrix_to_text(m: np.ndarray) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in np.asarray(m).tolist()) + "\n"


def spectrum(g: Graph, kind: MatrixKind | str, tol: float = DEFAULT_TOL) -> Spectrum:
    return eigenvalues_symmetric(matrix_of(g, kind), tol)


def laplacian_ascending(g: Graph) -> tuple[float, ...]:
    """Laplacian eigenvalues as mu_1 <= ... <= mu_n."""
    return spectrum(g, MatrixKind.LAPLACIAN).ascending


def q_min(g: Graph) -> float:
    """Smallest signless Laplacian eigenvalue."""
    return spectrum(g, MatrixKind.SIGNLESS_LAPLACIAN).min


def q_min_batch(adj: np.ndarray, chunk: int = 20000) -> np.ndarray:
    """``q_min`` for every adjacency matrix in a ``(B, n, n)`` stack."""
    out = np.empty(adj.shape[0])
    for lo in range(0, adj.shape[0], chunk):
        q = matrices_from_adjacency(adj[lo:lo + chunk], MatrixKind.SIGNLESS_LAPLACIAN)
        out[lo:lo + chunk] = jacobi_eigenvalues(q)[:, -1]
    return out


def mu_2(g: Graph) -> float:
    """Algebraic connectivity: second smallest Laplacian eigenvalue."""
    if g.n < 2:
        raise ParameterError("mu_2 needs at least two vertices")
    return laplacian_ascending(g)[1]


# -- closed forms for blowups ------------------------------------------------


def _check_t(t: int) -> None:
    if t < 1:
        raise ParameterError(f"blowup multiplicity must be >= 1, got {t}")


def blowup_spectrum_closed(g: Graph, t: int, kind: MatrixKind | str) -> Spectrum:
    """Spectrum of the ``kind`` matrix of ``blowup(g, t)`` from ``g`` alone.

    Adjacency: t*lambda_i plus n(t-1) zeros.  Laplacian and signless
    Laplacian: t times the base eigenvalues plus each t*d_i repeated t-1 times.
    """
    _check_t(t)
    kind = MatrixKind.parse(kind)
    base = spectrum(g, kind)
    if t == 1:
        return base
    scaled = [t * v for v in base.values]
    if kind is MatrixKind.ADJACENCY:
        extra = [0.0] * (g.n * (t - 1))
    else:
        extra = [float(t * d) for d in g.degrees for _ in range(t - 1)]
    return Spectrum.from_values(scaled + extra)


def blowup_complement_spectrum_closed(g: Graph, t: int, kind: MatrixKind | str) -> Spectrum:
    """Spectrum of the ``kind`` matrix of ``complement(blowup(g, t))`` from ``g`` alone."""
    _check_t(t)
    kind = MatrixKind.parse(kind)
    n = g.n
    if t == 1:
        return spectrum(complement(g), kind)
    if kind is MatrixKind.ADJACENCY:
        lam_bar = spectrum(complement(g), kind).values
        return Spectrum.from_values([t * v + t - 1 for v in lam_bar] + [-1.0] * (n * (t - 1)))
    if kind is MatrixKind.SIGNLESS_LAPLACIAN:
        q_bar = spectrum(complement(g), kind).values
        main = [t * v + 2 * (t - 1) for v in q_bar]
        extra = [float(t * n - t * d - 2) for d in g.degrees for _ in range(t - 1)]
        return Spectrum.from_values(main + extra)
    # Laplacian of a complement: {0} together with N - nu over all but one zero of L
    big = blowup_spectrum_closed(g, t, MatrixKind.LAPLACIAN).ascending
    order = t * n
    return Spectrum.from_values([0.0] + [order - v for v in big[1:]])


def complement_laplacian_closed(g: Graph) -> Spectrum:
    """Laplacian spectrum of the complement: {0} and n - mu_i for i = 2..n."""
    mu = laplacian_ascending(g)
    return Spectrum.from_values([0.0] + [g.n - v for v in mu[1:]])


def check_regular_identity(g: Graph) -> tuple[float, float]:
    """``(q_min, d + lambda_min)`` for a ``d``-regular graph."""
    if not g.is_regular():
        raise ParameterError("regular identity needs a regular graph")
    d = g.degrees[0]
    return q_min(g), d + spectrum(g, MatrixKind.ADJACENCY).min


def _is_singular(rows: list[list[int]]) -> bool:
    """Exact singularity test by fraction-free (Bareiss) elimination."""
    m = [row[:] for row in rows]
    n = len(m)
    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k] != 0), None)
        if pivot is None:
            return True
        m[k], m[pivot] = m[pivot], m[k]
        mk = m[k]
        akk = mk[k]
        for i in range(k + 1, n):
            mi = m[i]
            aik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (akk * mi[j] - aik * mk[j]) // prev
            mi[k] = 0
        prev = akk
    return False


def certify_integer_eigenvalue(m: np.ndarray, value: float, tol: float = 1e-9) -> float:
    """Snap ``value`` to the nearest integer ``k`` if ``k`` is provably an eigenvalue.

    ``m`` must have integer entries; ``m - k I`` is tested for singularity in
    exact integer arithmetic.  Otherwise ``value`` is returned unchanged.
    """
    k = round(value)
    if abs(value - k) > tol:
        return value
    rows = [[int(x) for x in row] for row in np.asarray(m).tolist()]
    for i in range(len(rows)):
        rows[i][i] -= k
    return float(k) if _is_singular(rows) else value


def q_min_certified(g: Graph) -> float:
    """``q_min`` snapped to an exact integer when that integer is a certified eigenvalue."""
    q = matrix_of(g, MatrixKind.SIGNLESS_LAPLACIAN)
    return certify_integer_eigenvalue(q, jacobi_eigenvalues(q)[-1])
