"""Entropy measures for two-qubit states under local projective measurement.

All entropies are in nats except :func:`probe_information`, which reports
bits per box because it feeds the demon's memory ledger directly.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import qdense
from .errors import ContractError, ParameterError

PROB_FLOOR = 1e-14
DELTA_TOL = 1e-10

GRID_THETA = 33
GRID_PHI = 65
ANGLE_RESOLUTION = 1e-7
TIE_TOL = 1e-12
IMPROVE_TOL = 1e-15  # ignore rounding-level "improvements" on flat landscapes
ENTROPY_NOISE = 1e-14  # discord values this small are rounding, reported as 0


@dataclass(frozen=True)
class MeasurementBasis:
    """Projective qubit measurement along the Bloch direction (theta, phi).

    The "+" outcome projects onto cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>,
    so theta = 0 is the energy (z) basis with "+" = g.
    """

    theta: float = 0.0
    phi: float = 0.0

    def ket(self) -> np.ndarray:
        return _bloch_kets(np.asarray(self.theta), np.asarray(self.phi))

    def projectors(self):
        k = self.ket()
        plus = np.outer(k, np.conj(k))
        return plus, np.eye(2, dtype=complex) - plus


Z_BASIS = MeasurementBasis(0.0, 0.0)


@dataclass(frozen=True)
class DeltaReport:
    s_a: float
    s_b_given_a: float
    s_joint: float
    delta_raw: float

    @property
    def delta(self) -> float:
        """Excess entropy with rounding-level negatives clamped to zero."""
        if self.delta_raw < -DELTA_TOL:
            raise ContractError(f"excess entropy {self.delta_raw!r} is negative beyond tolerance")
        return max(0.0, self.delta_raw)


class ProbeInformation(NamedTuple):
    paper_form: float
    gaussian_form: float


def _bloch_kets(theta, phi):
    return np.stack(
        [np.cos(theta / 2) + 0j, np.exp(1j * phi) * np.sin(theta / 2)], axis=-1
    )


def shannon(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    if np.any(p < -1e-12):
        raise ContractError("probabilities must be non-negative")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise ContractError(f"probabilities sum to {total!r}, expected 1")
    p = p / total
    return max(0.0, float(-qdense.xlogx(p).sum()))


def conditional_entropy(rho, basis: MeasurementBasis = Z_BASIS) -> float:
    """Entropy left in B after a projective measurement of A, averaged over outcomes."""
    rho = qdense.as_operator(rho)
    total = 0.0
    for proj in basis.projectors():
        m = qdense.kron(proj, np.eye(2))
        post = m @ rho @ m
        p = float(np.trace(post).real)
        if p < PROB_FLOOR:
            continue
        rho_b = qdense.partial_trace(post, "B")
        rho_b = rho_b / np.trace(rho_b).real
        total += p * qdense.vn_entropy(rho_b)
    return total


def excess_entropy(rho, basis: MeasurementBasis = Z_BASIS) -> DeltaReport:
    rho = qdense.check_density(rho)
    s_a = qdense.vn_entropy(qdense.partial_trace(rho, "A"))
    s_ba = conditional_entropy(rho, basis)
    s_ab = qdense.vn_entropy(rho)
    return DeltaReport(s_a, s_ba, s_ab, s_a + s_ba - s_ab)


def _conditional_entropy_batch(rho: np.ndarray, theta, phi) -> np.ndarray:
    """Vectorised S(B | Pi_A) over arrays of Bloch angles (closed-form 2x2 route)."""
    t = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    kets = _bloch_kets(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    plus = kets[..., :, None] * np.conj(kets[..., None, :])
    total = np.zeros(np.shape(theta))
    for proj in (plus, np.eye(2) - plus):
        # Tr_A[rho (P x I)]_{kl} = sum_ij rho[(i,k),(j,l)] P[j,i]
        block = np.einsum("ikjl,...ji->...kl", t, proj)
        lam = np.clip(qdense.eigvalsh_2x2(block), 0.0, None)
        p = lam.sum(axis=-1)
        term = -qdense.xlogx(lam).sum(axis=-1) + qdense.xlogx(p)
        total += np.where(p < PROB_FLOOR, 0.0, term)
    return total


def discord(rho):
    """Minimum excess entropy over all projective measurements on A.

    A fixed 33 x 65 grid over (theta, phi) is scanned first (ties within 1e-12
    go to the lowest grid index), then the best point is polished by
    coordinate descent with step halving down to 1e-7 rad.  Returns
    ``(value, basis)``.
    """
    rho = qdense.check_density(rho)
    s_a = qdense.vn_entropy(qdense.partial_trace(rho, "A"))
    s_ab = qdense.vn_entropy(rho)

    thetas = np.linspace(0.0, np.pi, GRID_THETA)
    phis = np.linspace(0.0, 2 * np.pi, GRID_PHI, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = _conditional_entropy_batch(rho, tt, pp).ravel()
    best_idx = int(np.flatnonzero(vals <= vals.min() + TIE_TOL)[0])
    theta, phi = float(tt.ravel()[best_idx]), float(pp.ravel()[best_idx])
    best = float(vals[best_idx])

    def f(th, ph):
        return float(_conditional_entropy_batch(rho, np.array(th), np.array(ph)))

    steps = [thetas[1] - thetas[0], phis[1] - phis[0]]
    while max(steps) >= ANGLE_RESOLUTION:
        moved = False
        for axis in (0, 1):
            for sign in (1.0, -1.0):
                th, ph = theta, phi
                if axis == 0:
                    th = min(np.pi, max(0.0, theta + sign * steps[0]))
                else:
                    ph = (phi + sign * steps[1]) % (2 * np.pi)
                val = f(th, ph)
                if val < best - IMPROVE_TOL:
                    theta, phi, best, moved = th, ph, val, True
                    break
        if not moved:
            steps = [s / 2 for s in steps]

    value = s_a + best - s_ab
    return (value if value > ENTROPY_NOISE else 0.0), MeasurementBasis(theta, phi)


def probe_information(n: int, p_e: float) -> ProbeInformation:
    """Information per box (bits) gained by learning the excitation count m.

    ``paper_form`` is (1/2N) log2(2 pi e sigma) with sigma = sqrt(N p_e p_g);
    ``gaussian_form`` uses sigma^2 in place of sigma, which is the usual
    large-N entropy of a Gaussian.  The two differ by log2(sigma) / (2N).
    """
    if n < 2:
        raise ParameterError("probe_information needs n >= 2")
    if p_e <= 0.0 or p_e >= 1.0:
        return ProbeInformation(0.0, 0.0)
    sigma = math.sqrt(n * p_e * (1.0 - p_e))
    c = 2 * math.pi * math.e
    return ProbeInformation(
        math.log2(c * sigma) / (2 * n),
        math.log2(c * sigma * sigma) / (2 * n),
    )


def binomial_entropy_bits(n: int, p: float) -> float:
    """Exact entropy of Binomial(n, p) in bits (not per box)."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    k = np.arange(n + 1, dtype=float)
    lg = np.vectorize(math.lgamma)
    logpmf = lg(n + 1.0) - lg(k + 1.0) - lg(n - k + 1.0) + k * math.log(p) + (n - k) * math.log1p(-p)
    pmf = np.exp(logpmf)
    return float(-(pmf * logpmf).sum() / math.log(2))
