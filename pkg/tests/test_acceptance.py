"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Reference numbers come from independent oracles (scalar Boltzmann arithmetic,
scipy matrix functions) and are frozen in ``conftest.REF``.
"""

import math
import time

import numpy as np

import conftest
from conftest import REF, random_density, random_hermitian
from qratchet import engine, infotheory, model
from qratchet.engine import DemonMode
from qratchet.infotheory import MeasurementBasis
from qratchet.model import EngineParams
from qratchet.ratchetmc import rangecoder
from qratchet.ratchetmc import simulation as sim

LAMBDA_GRID = np.round(np.arange(1, 101) * 0.01, 2)
BETA_GRID = np.geomspace(0.1, 10.0, 30)
FIG_BETAS = (1.0, 2.0, 10.0)
FIG_LAMBDAS = (0.2, 0.3, 0.4)


def verdict(number, title, checks):
    """Print and record one line per criterion; fail with the broken sub-checks."""
    ok = all(passed for _, passed in checks)
    detail = "; ".join(f"{name}={'ok' if passed else 'FAILED'}" for name, passed in checks)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_1_second_law_grid():
    t0 = time.perf_counter()
    w = engine.ratchet_ledger(1.0, LAMBDA_GRID[None, :], BETA_GRID[:, None], DemonMode.RANDOM)["w_net"]
    elapsed = time.perf_counter() - t0
    near_zero = np.abs(w) < 1e-12
    edge_only = not near_zero[:, 1:].any()
    print(f"  max w_net = {w.max():.3e}, points with |w_net|<1e-12: {int(near_zero.sum())}, {elapsed * 1e3:.1f} ms")
    verdict(
        1,
        "random-mode w_net <= 1e-12 on the 100 x 30 grid",
        [("w_net<=1e-12", bool(np.all(w <= 1e-12))), ("equality only at lambda edge", edge_only), ("runtime<1s", elapsed < 1.0)],
    )


def test_criterion_2_deterministic_counterfactual():
    w = engine.ratchet_ledger(1.0, LAMBDA_GRID[None, :], BETA_GRID[:, None], DemonMode.DETERMINISTIC)["w_net"]
    worst = 0.0
    for i, beta in enumerate(BETA_GRID):
        for j, lam in enumerate(LAMBDA_GRID):
            z = math.exp(beta) + math.exp(beta * lam) + math.exp(-beta * lam) + math.exp(-beta)
            worst = max(worst, abs(w[i, j] - lam * math.tanh(beta * lam / 2) / z))
    print(f"  min w_net = {w.min():.3e}, max |w_net - tanh identity| = {worst:.2e}")
    verdict(2, "deterministic w_net = lam tanh(beta lam/2)/Z > 0", [("positive", bool(np.all(w > 0))), ("identity<=1e-12", worst <= 1e-12)])


def test_criterion_3_uncoupled_probability_curves():
    lam = np.concatenate([[0.0], LAMBDA_GRID])
    curves = {b: model._uncoupled_overall(1.0, lam, b) for b in FIG_BETAS}
    at_zero = all(curves[b][0] == 0.5 for b in FIG_BETAS)
    decreasing = all(np.all(np.diff(curves[b]) < 0) for b in FIG_BETAS)
    order_10_2 = curves[10.0][1:] < curves[2.0][1:]
    order_2_1 = curves[2.0][1:] < curves[1.0][1:]
    spot = model.spatial_occupancy(EngineParams(omega=1.0, lam=0.5, beta=1.0)).p_o
    if not order_10_2.all():
        bad = LAMBDA_GRID[~order_10_2]
        print(f"  p_o(beta=10) >= p_o(beta=2) for lambda in [{bad.min():.2f}, {bad.max():.2f}]")
        print(f"  e.g. lambda=0.5: beta=1 {curves[1.0][50]:.6f}, beta=2 {curves[2.0][50]:.6f}, beta=10 {curves[10.0][50]:.6f}")
    po_minus = {b: model._uncoupled_given_state(LAMBDA_GRID, b)[0] for b in FIG_BETAS}
    minus_order = bool(np.all(po_minus[10.0] < po_minus[2.0]) and np.all(po_minus[2.0] < po_minus[1.0]))
    print(f"  per-state p_o^- satisfies the beta ordering: {minus_order}")
    print(f"  p_o(beta=1, lambda=0.5) = {spot:.8f} (oracle {REF['p_o']:.8f})")
    verdict(
        3,
        "p_o shape, beta ordering and spot value",
        [
            ("p_o(0)=0.5", at_zero),
            ("strictly decreasing", decreasing),
            ("beta=2 below beta=1", bool(order_2_1.all())),
            ("beta=10 below beta=2", bool(order_10_2.all())),
            ("spot +-1e-5", abs(spot - REF["p_o"]) <= 1e-5),
        ],
    )


def test_criterion_4_effective_temperature():
    ratios = {lam: model._teff_ratio(1.0, lam, BETA_GRID) for lam in FIG_LAMBDAS}
    at_least_one = all(np.all(r >= 1.0) for r in ratios.values())
    ordered = bool(np.all(ratios[0.2] < ratios[0.3]) and np.all(ratios[0.3] < ratios[0.4]))
    spot = model.effective_temperature_ratio(EngineParams(omega=1.0, lam=0.5, beta=1.0))
    print(f"  T_eff/T(beta=1, lambda=0.5) = {spot:.8f} (oracle {REF['teff_ratio']:.8f})")
    verdict(
        4,
        "T_eff/T >= 1, lambda ordering, spot value",
        [("ratio>=1", at_least_one), ("0.2<0.3<0.4", ordered), ("spot +-1e-5", abs(spot - REF["teff_ratio"]) <= 1e-5)],
    )


def test_criterion_5_global_cycle_klein():
    rng = np.random.default_rng(5)
    cases = []
    for _ in range(1000):
        dim = int(rng.integers(2, 7))
        cases.append((random_hermitian(rng, dim), random_hermitian(rng, dim), float(rng.uniform(0.1, 10.0))))
    t0 = time.perf_counter()
    reports = [engine.generic_cycle(h1, h2, beta) for h1, h2, beta in cases]
    elapsed = time.perf_counter() - t0
    w_max = max(r.w_net for r in reports)
    gap = max(abs(r.w_net - r.w_net_closed) for r in reports)
    print(f"  max W_net = {w_max:.3e}, max |steps - closed form| = {gap:.2e}, {elapsed:.2f} s")
    verdict(5, "1000 random pairs, W_net <= 0", [("W_net<=1e-10", w_max <= 1e-10), ("routes agree<=1e-10", gap <= 1e-10), ("runtime<5s", elapsed < 5.0)])


def test_criterion_6_discord_suite():
    rng = np.random.default_rng(6)
    min_delta = math.inf
    discord_excess = -math.inf
    for _ in range(1000):
        rho = random_density(rng, 4, int(rng.integers(1, 5)))
        basis = MeasurementBasis(float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi)))
        min_delta = min(min_delta, infotheory.excess_entropy(rho, basis).delta_raw)
        d, _ = infotheory.discord(rho)
        discord_excess = max(discord_excess, d - infotheory.excess_entropy(rho).delta)

    product_max = 0.0
    for _ in range(100):
        a = np.diag(rng.dirichlet([1, 1]))
        b = np.diag(rng.dirichlet([1, 1]))
        product_max = max(product_max, abs(infotheory.excess_entropy(np.kron(a, b)).delta_raw))

    cq_max = 0.0
    for _ in range(100):
        theta, phi = float(rng.uniform(0, math.pi)), float(rng.uniform(0, 2 * math.pi))
        basis = MeasurementBasis(theta, phi)
        up, down = basis.projectors()
        p = rng.dirichlet([1, 1])
        rho = p[0] * np.kron(up, random_density(rng, 2, 1)) + p[1] * np.kron(down, random_density(rng, 2, 1))
        cq_max = max(cq_max, infotheory.excess_entropy(rho, basis).delta_raw)

    print(f"  min delta = {min_delta:.2e}, max(discord - delta_z) = {discord_excess:.2e}")
    print(f"  max |delta| diagonal products = {product_max:.2e}, max delta classical-quantum = {cq_max:.2e}")
    verdict(
        6,
        "excess entropy and discord properties",
        [
            ("delta>=-1e-10", min_delta >= -1e-10),
            ("discord<=delta_z", discord_excess <= 1e-10),
            ("products<=1e-12", product_max <= 1e-12),
            ("additivity<=1e-10", cq_max <= 1e-10),
        ],
    )


def test_criterion_7_monte_carlo():
    cfg = sim.McConfig(EngineParams(omega=1.0, lam=0.5, beta=1.0), n_boxes=1_000_000, seed=42)
    t0 = time.perf_counter()
    rep = sim.run(cfg, threads=1)
    elapsed = time.perf_counter() - t0
    first = rep.to_json()
    second = sim.run(cfg, threads=1).to_json()
    threaded = sim.run(cfg, threads=8).to_json()

    pops = model.eigen_populations(cfg.params).as_array()
    q = pops[1] + pops[2]
    joint = np.array([pops[0], q / 2, q / 2, pops[3]])
    info = -np.log(joint)
    sigma = math.sqrt(((joint * info**2).sum() - ((joint * info).sum()) ** 2) / cfg.n_boxes)
    w_dev = abs(rep.w_net_mean - REF["w_net_random"])
    h_dev = abs(rep.joint_entropy_empirical - REF["joint_entropy"])
    print(f"  w_net_mean = {rep.w_net_mean:.6f} +- {rep.w_net_stderr:.2e} (oracle {REF['w_net_random']:.6f}, {w_dev / rep.w_net_stderr:.2f} stderr)")
    print(f"  joint entropy = {rep.joint_entropy_empirical:.6f} (oracle {REF['joint_entropy']:.6f}, {h_dev / sigma:.2f} sigma), {elapsed:.2f} s")
    verdict(
        7,
        "Monte Carlo at N=1e6, seed 42",
        [
            ("w_net within 4 stderr", w_dev <= 4 * rep.w_net_stderr),
            ("joint entropy within 5 sigma", h_dev <= 5 * sigma),
            ("runtime<10s", elapsed < 10.0),
            ("repeat identical", first == second),
            ("threads 1 vs 8 identical", first == threaded),
        ],
    )


def test_criterion_8_coder_bound():
    rng = np.random.default_rng(8)
    pops = model.eigen_populations(EngineParams(omega=1.0, lam=0.5, beta=1.0)).as_array()
    q = pops[1] + pops[2]
    models = {
        "joint record": np.array([pops[0], q / 2, q / 2, pops[3]]),
        "internal states": pops,
        "uniform": np.full(4, 0.25),
        "biased binary": np.array([0.9, 0.1]),
    }
    n = 1_000_000
    within, round_trip = True, True
    for name, probs in models.items():
        data = rng.choice(len(probs), size=n, p=probs)
        blob = rangecoder.encode(data, probs)
        bits = 8 * len(blob)
        target = n * rangecoder.entropy_bits(probs)
        ok = abs(bits - target) <= 0.01 * target + 64
        back = np.array_equal(rangecoder.decode(blob, probs, n), data)
        print(f"  {name}: {bits} bits vs N*H = {target:.1f} (overhead {bits - target:+.1f}), round trip {back}")
        within &= ok
        round_trip &= back
    verdict(8, "coder within 1% + 64 bits of N*H", [("bound", within), ("round trip", round_trip)])


def test_criterion_9_probe_negligible():
    p_e = float(model._excited_population(1.0, 0.5, 1.0))
    small = infotheory.probe_information(10**4, p_e).paper_form
    large = infotheory.probe_information(10**8, p_e).paper_form
    worst_small = max(infotheory.probe_information(10**4, x).paper_form for x in np.linspace(0.01, 0.99, 99))
    worst_large = max(infotheory.probe_information(10**8, x).paper_form for x in np.linspace(0.01, 0.99, 99))
    print(f"  H_p(N=1e4) = {small:.3e}, H_p(N=1e8) = {large:.3e} bits/box")
    verdict(
        9,
        "probe information per box",
        [("N=1e4 <0.01", small < 0.01 and worst_small < 0.01), ("N=1e8 <1e-5", large < 1e-5 and worst_large < 1e-5)],
    )
