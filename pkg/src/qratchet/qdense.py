"""Dense Hermitian linear algebra for very small matrices (dimension <= 8).

Everything here works on plain ``numpy`` complex arrays.  The eigensolver is a
cyclic complex Jacobi iteration, which at these sizes is fast enough and gives
fully deterministic eigenvector output (see :func:`eig_hermitian`).

Entropies are in nats throughout.
"""

import math
from typing import Callable, NamedTuple, Union

import numpy as np

from .errors import ContractError, ConvergenceError, DimensionError, DomainError, ShapeError

MAX_DIM = 8
HERMITIAN_ATOL = 1e-12
JACOBI_TOL = 1e-13
DEGENERACY_GAP = 1e-9
CLAMP_TOL = 1e-12
ZERO_EIGENVALUE = 1e-14
_MAX_SWEEPS = 60


class EigenSystem(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def as_operator(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"operator must be a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionError(f"dimension {a.shape[0]} exceeds limit {MAX_DIM}")
    return a


def is_hermitian(m, atol: float = HERMITIAN_ATOL) -> bool:
    a = np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    return bool(np.all(np.abs(a - dagger(a)) <= atol * scale))


def kron(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    dim = a.shape[0] * b.shape[0]
    if dim > MAX_DIM:
        raise DimensionError(f"kron result dimension {dim} exceeds limit {MAX_DIM}")
    return np.kron(a, b)


def partial_trace(m, keep: Union[str, int]) -> np.ndarray:
    """Reduced state of one qubit of a two-qubit operator.

    ``keep`` names the factor that survives: ``"A"`` (left tensor factor, or 0)
    or ``"B"`` (right tensor factor, or 1).
    """
    a = np.asarray(m, dtype=complex)
    if a.shape != (4, 4):
        raise ShapeError(f"partial_trace needs a 4x4 operator, got shape {a.shape}")
    t = a.reshape(2, 2, 2, 2)  # (iA, iB, jA, jB)
    if keep in ("A", "a", 0):
        return np.einsum("ikjk->ij", t)
    if keep in ("B", "b", 1):
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _jacobi(a: np.ndarray):
    # Plain Python complex arithmetic: far cheaper than numpy calls at n <= 8.
    n = a.shape[0]
    m = a.tolist()
    v = np.eye(n, dtype=complex).tolist()
    scale = max(1.0, float(np.linalg.norm(a)))
    limit = (JACOBI_TOL * scale) ** 2
    rows = range(n)
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for i in rows:
            mi = m[i]
            for j in rows:
                if i != j:
                    off += mi[j].real ** 2 + mi[j].imag ** 2
        if off <= limit:
            return np.array([m[i][i].real for i in rows]), np.array(v)
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = m[p][q]
                mag = abs(b)
                if mag == 0.0:
                    continue
                theta = 0.5 * math.atan2(2.0 * mag, m[q][q].real - m[p][p].real)
                c, s = math.cos(theta), math.sin(theta)
                ph = b.conjugate() / mag  # e^{-i arg b}
                sph, cph = s * ph, c * ph
                # columns: A <- A U with U = [[c, s], [-s ph, c ph]]
                for row in m:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
                for row in v:
                    x, y = row[p], row[q]
                    row[p] = c * x - sph * y
                    row[q] = s * x + cph * y
                # rows: A <- U^dagger A
                rp, rq = m[p], m[q]
                sphc, cphc = sph.conjugate(), cph.conjugate()
                for k in rows:
                    x, y = rp[k], rq[k]
                    rp[k] = c * x - sphc * y
                    rq[k] = s * x + cphc * y
                rp[q] = rq[p] = 0j
                rp[p] = complex(rp[p].real, 0.0)
                rq[q] = complex(rq[q].real, 0.0)
    raise ConvergenceError("Jacobi iteration did not converge")


def _first_nonzero(vec: np.ndarray) -> complex:
    for x in vec:
        if abs(x) > 1e-12:
            return x
    return vec[0]


def eig_hermitian(m) -> EigenSystem:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Output is deterministic: eigenvalues ascend; inside a degenerate cluster
    (gaps below 1e-9) vectors are ordered by descending magnitude of their
    first nonzero component, and every vector is phase-fixed so that this
    component is real and positive.
    """
    a = as_operator(m)
    if not is_hermitian(a):
        raise ContractError("eig_hermitian requires a Hermitian matrix")
    a = 0.5 * (a + dagger(a))
    w, v = _jacobi(a)

    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]
    for k in range(v.shape[1]):
        lead = _first_nonzero(v[:, k])
        v[:, k] *= np.conj(lead) / abs(lead)

    n = len(w)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and w[stop] - w[stop - 1] < DEGENERACY_GAP:
            stop += 1
        if stop - start > 1:
            keys = [-abs(_first_nonzero(v[:, k])) for k in range(start, stop)]
            sub = np.argsort(keys, kind="stable") + start
            v[:, start:stop] = v[:, sub]
        start = stop
    return EigenSystem(w, v)


def eigvalsh(m) -> np.ndarray:
    return eig_hermitian(m).eigenvalues


def eigvalsh_2x2(blocks: np.ndarray) -> np.ndarray:
    """Closed-form ascending eigenvalues of a stack of 2x2 Hermitian matrices."""
    blocks = np.asarray(blocks)
    a = blocks[..., 0, 0].real
    d = blocks[..., 1, 1].real
    b = blocks[..., 0, 1]
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), np.abs(b))
    return np.stack([mean - rad, mean + rad], axis=-1)


def from_eigensystem(es: EigenSystem, values) -> np.ndarray:
    v = es.eigenvectors
    return (v * np.asarray(values)) @ dagger(v)


def xlogx(x):
    """x ln x with the 0 ln 0 = 0 convention."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log(x[pos])
    return out


def mat_func(m, f: Callable) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum."""
    es = eig_hermitian(m)
    with np.errstate(all="ignore"):
        fv = np.asarray(f(es.eigenvalues), dtype=complex)
    if not np.all(np.isfinite(fv)):
        raise DomainError("function is undefined at an eigenvalue")
    return from_eigensystem(es, fv)


def density_spectrum(rho) -> np.ndarray:
    """Validated eigenvalues of a density matrix.

    Small negative eigenvalues (down to -1e-12) are rounding noise: they are
    clamped to zero and the spectrum renormalized.  Anything more negative is
    treated as a logic error.
    """
    a = as_operator(rho)
    if abs(np.trace(a) - 1.0) > CLAMP_TOL:
        raise ContractError(f"density matrix trace is {np.trace(a).real!r}, expected 1")
    w = eigvalsh(a)
    if w[0] < -CLAMP_TOL:
        raise ContractError(f"density matrix has negative eigenvalue {w[0]!r}")
    w = np.where(w < 0, 0.0, w)
    return w / w.sum()


def check_density(rho) -> np.ndarray:
    """Return ``rho`` as a complex array after checking it is a valid state."""
    a = as_operator(rho)
    if not is_hermitian(a):
        raise ContractError("density matrix must be Hermitian")
    density_spectrum(a)
    return a


def vn_entropy(rho) -> float:
    w = density_spectrum(rho)
    w = np.where(w < ZERO_EIGENVALUE, 0.0, w)
    return max(0.0, float(-xlogx(w).sum()))
