"""Two-atom XY model: Hamiltonian, thermal state, spatial occupancy.

Basis order for the pair is (|gg>, |ge>, |eg>, |ee>) with atom A as the left
tensor factor and g before e on each atom.  Units: hbar = k_B = 1.

The scalar helpers prefixed with an underscore accept numpy arrays for
(omega, lam, beta) so that sweeps can be evaluated in one shot.
"""

from dataclasses import dataclass

import numpy as np

from . import qdense
from .errors import DomainError, ParameterError

# single-atom operators in the (g, e) basis
SZ = np.diag([-0.5, 0.5]).astype(complex)
SPLUS = np.array([[0, 0], [1, 0]], dtype=complex)
SMINUS = SPLUS.T.copy()
I2 = np.eye(2, dtype=complex)

STATE_NAMES = ("gg", "minus", "plus", "ee")


@dataclass(frozen=True)
class EngineParams:
    omega: float = 1.0
    lam: float = 0.5
    beta: float = 1.0
    r0: float = 1.0
    L: float = 2.0 ** (1.0 / 3.0)

    def __post_init__(self):
        for name in ("omega", "lam", "beta", "r0", "L"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.omega > 0:
            raise ParameterError(f"omega must be > 0, got {self.omega}")
        if not self.beta > 0:
            raise ParameterError(f"beta must be > 0, got {self.beta}")
        if not self.lam >= 0:
            raise ParameterError(f"lam must be >= 0, got {self.lam}")
        if not (self.r0 > 0 and self.L > 0):
            raise ParameterError("r0 and L must be > 0")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta


@dataclass(frozen=True)
class EigenPopulations:
    p_gg: float
    p_minus: float
    p_plus: float
    p_ee: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p_gg, self.p_minus, self.p_plus, self.p_ee])


@dataclass(frozen=True)
class SpatialOccupancy:
    p_i_minus: float
    p_o_minus: float
    p_i_plus: float
    p_o_plus: float
    p_i: float
    p_o: float


@dataclass(frozen=True)
class GibbsState:
    rho: np.ndarray
    partition: float


def coupling(r, params: EngineParams):
    """Step-function coupling: lam inside the cutoff radius, zero outside."""
    r = np.abs(np.asarray(r, dtype=float))
    out = np.where(r <= params.r0, params.lam, 0.0)
    return float(out) if out.ndim == 0 else out


def build_hamiltonian(params: EngineParams, coupled: bool = True) -> np.ndarray:
    lam = params.lam if coupled else 0.0
    w = params.omega
    h = w * qdense.kron(SZ, I2) + w * qdense.kron(I2, SZ)
    flip = qdense.kron(SPLUS, SMINUS) + qdense.kron(SMINUS, SPLUS)
    return h + lam * flip


def gibbs(h, beta: float) -> GibbsState:
    if not beta > 0:
        raise ParameterError(f"beta must be > 0, got {beta}")
    es = qdense.eig_hermitian(h)
    return gibbs_from_eigensystem(es, beta)


def gibbs_from_eigensystem(es: qdense.EigenSystem, beta: float) -> GibbsState:
    e = es.eigenvalues
    shifted = np.exp(-beta * (e - e[0]))
    norm = shifted.sum()
    z = float(norm * np.exp(-beta * e[0]))
    return GibbsState(qdense.from_eigensystem(es, shifted / norm), z)


def _weights(omega, lam, beta):
    # Boltzmann weights of (gg, minus, plus, ee) relative to the ground level -omega
    omega, lam, beta = np.broadcast_arrays(*(np.asarray(x, dtype=float) for x in (omega, lam, beta)))
    w_gg = np.ones_like(omega)
    w_minus = np.exp(-beta * (omega - lam))
    w_plus = np.exp(-beta * (omega + lam))
    w_ee = np.exp(-2.0 * beta * omega)
    return w_gg, w_minus, w_plus, w_ee


def _populations(omega, lam, beta):
    w = _weights(omega, lam, beta)
    norm = sum(w)
    return tuple(x / norm for x in w)


def _partition(omega, lam, beta):
    return sum(_weights(omega, lam, beta)) * np.exp(beta * np.asarray(omega, dtype=float))


def _uncoupled_given_state(lam, beta):
    """(p_o^-, p_o^+) = 1/(1 + e^{+beta lam}), 1/(1 + e^{-beta lam})."""
    t = np.tanh(0.5 * np.asarray(beta, dtype=float) * np.asarray(lam, dtype=float))
    return 0.5 * (1.0 - t), 0.5 * (1.0 + t)


def _uncoupled_overall(omega, lam, beta):
    # (p_gg + p_ee)/2 + p_- p_o^- + p_+ p_o^+ rearranged so lam = 0 gives exactly 1/2
    _, p_m, p_p, _ = _populations(omega, lam, beta)
    t = np.tanh(0.5 * np.asarray(beta, dtype=float) * np.asarray(lam, dtype=float))
    return 0.5 - 0.5 * t * (p_m - p_p)


def _excited_population(omega, lam, beta):
    p_gg, p_m, p_p, p_ee = _populations(omega, lam, beta)
    return p_ee + 0.5 * (p_m + p_p)


def _teff_ratio(omega, lam, beta):
    # ln(p_g / p_e) from unnormalised weights
    w_gg, w_m, w_p, w_ee = _weights(omega, lam, beta)
    half_q = 0.5 * (w_m + w_p)
    log_odds = np.log((w_gg + half_q) / (w_ee + half_q))
    if np.any(log_odds <= 0):
        raise DomainError("excited-state population >= 1/2; effective temperature undefined")
    ratio = np.asarray(beta, dtype=float) * np.asarray(omega, dtype=float) / log_odds
    return np.where(np.asarray(lam) == 0, 1.0, ratio)


def eigen_populations(params: EngineParams) -> EigenPopulations:
    p = _populations(params.omega, params.lam, params.beta)
    return EigenPopulations(*(float(x) for x in p))


def partition_function(params: EngineParams) -> float:
    return float(_partition(params.omega, params.lam, params.beta))


def thermal_state(params: EngineParams) -> GibbsState:
    """The coupled-pair equilibrium state rho_int."""
    return gibbs(build_hamiltonian(params, coupled=True), params.beta)


def spatial_occupancy(params: EngineParams) -> SpatialOccupancy:
    po_m, po_p = (float(x) for x in _uncoupled_given_state(params.lam, params.beta))
    p_o = float(_uncoupled_overall(params.omega, params.lam, params.beta))
    return SpatialOccupancy(
        p_i_minus=1.0 - po_m,
        p_o_minus=po_m,
        p_i_plus=1.0 - po_p,
        p_o_plus=po_p,
        p_i=1.0 - p_o,
        p_o=p_o,
    )


def reduced_atom(rho, which: str = "A") -> np.ndarray:
    return qdense.partial_trace(rho, which)


def effective_temperature_ratio(params: EngineParams) -> float:
    """T_eff / T for a single atom of the pair.

    T_eff = omega / ln(p_g / p_e) where p_e is the excited population of the
    reduced single-atom state.  Always >= 1, with equality only at lam = 0.
    """
    return float(_teff_ratio(params.omega, params.lam, params.beta))
