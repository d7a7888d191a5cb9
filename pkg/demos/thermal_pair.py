"""A coupled atom pair at equilibrium: populations, occupancy, hotter atoms."""

import numpy as np

from qratchet import infotheory, model, qdense
from qratchet.model import EngineParams

params = EngineParams(omega=1.0, lam=0.5, beta=1.0)

# ---- the Hamiltonian and its spectrum
h = model.build_hamiltonian(params)
print("energies:", qdense.eigvalsh(h))          # -omega, -lam, +lam, +omega
print("uncoupled:", np.diag(model.build_hamiltonian(params, coupled=False)).real)

# ---- thermal state and eigen-populations (gg, -, +, ee)
state = model.thermal_state(params)
pops = model.eigen_populations(params)
print("Z =", state.partition)
print("populations:", pops.as_array().round(5))
print("S(rho_int) =", qdense.vn_entropy(state.rho), "nats")

# ---- how often is the pair found outside the coupling radius?
occ = model.spatial_occupancy(params)
print(f"p_o^- = {occ.p_o_minus:.5f}  p_o^+ = {occ.p_o_plus:.5f}  p_o = {occ.p_o:.5f}")

# |gg> and |ee> do not care, |-> prefers to stay close, |+> prefers to leave
lam = np.linspace(0, 2, 9)
for beta in (1.0, 2.0, 10.0):
    curve = np.array([model.spatial_occupancy(EngineParams(lam=x, beta=beta)).p_o for x in lam])
    print(f"beta={beta:>4}: p_o =", np.array2string(curve, precision=4))

# ---- each atom on its own looks hotter than the bath
atom = model.reduced_atom(state.rho, "A")
print("single-atom excited population:", atom[1, 1].real)
print("T_eff / T =", model.effective_temperature_ratio(params))

# ---- local readout of A leaves entropy behind
rep = infotheory.excess_entropy(state.rho)
d, basis = infotheory.discord(state.rho)
print(f"delta (z readout) = {rep.delta:.6f}, discord = {d:.6f} at theta={basis.theta:.4f}")
