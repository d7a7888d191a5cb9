import numpy as np
import pytest
from hypothesis import settings

from qratchet.model import EngineParams

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


# Oracle values at (beta=1, omega=1, lam=0.5), computed offline with scipy
# expm/eigh and scalar Boltzmann arithmetic (never through this package).
REF = {
    "Z": 5.341413200043249,
    "s_int": 1.1378988822714664,
    "p_e_atom": 0.2799831,
    "teff_ratio": 1.0587102943855615,
    "joint_entropy": 1.1847416975405582,
    "delta_z": 0.04684281526909184,
    "p_o": 0.4761063298369526,
    "ratchet_gain": 0.022926391689911393,
    "w_net_random": -0.02391642357918045,
    "discord": 0.02738716539521535,
    "generic_w_net": -0.07280566320097959,
}


@pytest.fixture
def ref_params():
    return EngineParams(omega=1.0, lam=0.5, beta=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * (a + a.conj().T) / 2


def random_density(rng, dim=4, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim):
    _, v = np.linalg.eigh(random_hermitian(rng, dim))
    return v


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
