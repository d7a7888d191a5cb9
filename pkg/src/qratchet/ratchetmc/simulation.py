"""N-box Monte Carlo of the ratchet cycle with an explicit demon memory.

Pipeline per run: sample internal pair states and coupled/uncoupled flags,
collapse the entangled boxes with a collective readout of the A atoms, let
the demon read every atom, and charge Landauer work for the entropy-coded
record.  All randomness comes from counter-based streams keyed by
(seed, stream, box index), so results never depend on chunking or threads.

Every per-box ledger quantity takes one of finitely many values fixed by
(internal state, uncoupled flag, joint symbol).  Chunks therefore reduce to
integer count tables, and all report statistics are computed from the summed
table in a fixed order, which makes the report bit-reproducible.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import NamedTuple, Optional

import numpy as np

from .. import engine, infotheory, model
from ..engine import DemonMode
from ..errors import ContractError, ParameterError
from . import rangecoder, record, rng

GG, MINUS, PLUS, EE = 0, 1, 2, 3
COLLAPSE_NONE = -1
SYM_GG, SYM_GE, SYM_EG, SYM_EE = 0, 1, 2, 3
SEED_BITS = 64

_N_CATEGORIES = 4 * 2 * 4  # internal x uncoupled x joint symbol


@dataclass(frozen=True)
class McConfig:
    params: model.EngineParams = field(default_factory=model.EngineParams)
    n_boxes: int = 1_000_000
    seed: int = 42
    demon_mode: DemonMode = DemonMode.RANDOM
    chunk_size: int = 1 << 16

    def __post_init__(self):
        object.__setattr__(self, "demon_mode", DemonMode(self.demon_mode))
        if self.n_boxes < 1:
            raise ParameterError("n_boxes must be >= 1")
        if self.chunk_size < 1:
            raise ParameterError("chunk_size must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must fit in 64 bits")


class BoxSample(NamedTuple):
    internal: str
    uncoupled: bool
    collapse_outcome: Optional[str]


@dataclass(frozen=True)
class Ensemble:
    """Struct-of-arrays view of boxes ``start .. start + len - 1``."""

    start: int
    internal: np.ndarray  # int8 codes, model.STATE_NAMES order
    uncoupled: np.ndarray  # bool
    collapse: np.ndarray  # int8: -1 (none), SYM_GE or SYM_EG

    def __len__(self):
        return len(self.internal)

    def box(self, i: int) -> BoxSample:
        c = int(self.collapse[i])
        outcome = {COLLAPSE_NONE: None, SYM_GE: "ge", SYM_EG: "eg"}[c]
        return BoxSample(model.STATE_NAMES[self.internal[i]], bool(self.uncoupled[i]), outcome)


@dataclass(frozen=True)
class OutcomeRecord:
    a_bits: np.ndarray
    b_bits: np.ndarray
    m: int

    @property
    def symbols(self) -> np.ndarray:
        return (2 * self.a_bits + self.b_bits).astype(np.uint8)


class ErasureCost(NamedTuple):
    bits: int  # compressed record size, including any seed overhead
    ideal_bits: float  # self-information of the stored stream under the model
    seed_bits: int

    @property
    def coder_overhead_bits(self) -> float:
        return self.bits - self.seed_bits - self.ideal_bits


@dataclass(frozen=True)
class McReport:
    n_boxes: int
    seed: int
    mode: DemonMode
    w_net_mean: float
    w_net_stderr: float
    ratchet_gain_mean: float
    w_probe_mean: float
    erasure_bits_per_box: float
    ideal_erasure_bits_per_box: float
    coder_overhead_bits: float
    probe_bits_per_box: float
    probe_bits_per_box_gaussian: float
    m: int
    joint_entropy_empirical: float
    internal_entropy_empirical: float
    delta_empirical: float
    analytic: engine.RatchetReport
    params: model.EngineParams

    @property
    def w_net(self) -> float:
        return self.w_net_mean

    @property
    def violation(self) -> bool:
        return engine.second_law_check(self).violated

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        d["analytic"] = self.analytic.to_dict()
        d["violation"] = self.violation
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _model_tables(params: model.EngineParams):
    pops = model.eigen_populations(params).as_array()
    q = pops[MINUS] + pops[PLUS]
    joint = np.array([pops[GG], 0.5 * q, 0.5 * q, pops[EE]])
    return pops, joint


def sample_ensemble(cfg: McConfig, start: int = 0, stop: Optional[int] = None) -> Ensemble:
    """Equilibrium internal states and coupled/uncoupled flags for a box range."""
    stop = cfg.n_boxes if stop is None else stop
    p = cfg.params
    pops = model.eigen_populations(p).as_array()
    occ = model.spatial_occupancy(p)
    cum = np.cumsum(pops)[:-1]
    u_int = rng.uniforms(cfg.seed, rng.INTERNAL, start, stop)
    # number of cumulative cut points <= u, i.e. searchsorted(side="right")
    internal = (u_int >= cum[0]).view(np.int8) + (u_int >= cum[1]).view(np.int8) + (u_int >= cum[2]).view(np.int8)
    threshold = np.array([0.5, occ.p_o_minus, occ.p_o_plus, 0.5])[internal]
    uncoupled = rng.uniforms(cfg.seed, rng.POSITION, start, stop) < threshold
    collapse = np.full(len(internal), COLLAPSE_NONE, dtype=np.int8)
    return Ensemble(start, internal, uncoupled, collapse)


def collective_measurement(ens: Ensemble, cfg: McConfig):
    """Collective QND readout of the A atoms.

    Each still-entangled box collapses to eg or ge with probability 1/2 from
    the dedicated collapse stream.  Returns ``(ensemble, m, energy)`` where m
    is the number of excited A atoms and ``energy`` the work put in: +lam per
    coupled |-> box, -lam per coupled |+> box, nothing for uncoupled boxes.
    Already-collapsed boxes are eigenstates of the readout and are left alone,
    so a second call returns the same ensemble, the same m and zero energy.
    """
    entangled = ((ens.internal == MINUS) | (ens.internal == PLUS)) & (ens.collapse == COLLAPSE_NONE)
    collapse = ens.collapse.copy()
    if entangled.any():
        u = rng.uniforms(cfg.seed, rng.COLLAPSE, ens.start, ens.start + len(ens))
        outcome = np.where(u < 0.5, SYM_EG, SYM_GE).astype(np.int8)
        collapse[entangled] = outcome[entangled]
    coupled = entangled & ~ens.uncoupled
    n_minus = int(np.count_nonzero(coupled & (ens.internal == MINUS)))
    n_plus = int(np.count_nonzero(coupled & (ens.internal == PLUS)))
    energy = cfg.params.lam * (n_minus - n_plus)
    out = replace(ens, collapse=collapse)
    m = int(np.count_nonzero((out.internal == EE) | (out.collapse == SYM_EG)))
    return out, m, energy


def demon_readout(ens: Ensemble) -> OutcomeRecord:
    ent = (ens.internal == MINUS) | (ens.internal == PLUS)
    if np.any(ent & (ens.collapse == COLLAPSE_NONE)):
        raise ContractError("demon readout before collapse: entangled boxes present")
    sym = np.where(ent, ens.collapse, np.where(ens.internal == EE, SYM_EE, SYM_GG)).astype(np.uint8)
    a = (sym >> 1).astype(np.uint8)
    b = (sym & 1).astype(np.uint8)
    return OutcomeRecord(a, b, int(a.sum()))


def erasure_cost(rec: OutcomeRecord, cfg: McConfig, internal: Optional[np.ndarray] = None) -> ErasureCost:
    """Bits the demon must erase to reset its memory.

    Random mode: the joint readout stream is entropy-coded under its exact
    model (p_gg, q/2, q/2, p_ee).  Deterministic mode: the demon can rerun the
    collapse stream from its 64-bit seed, so its memory only has to hold the
    pre-collapse pair states (``internal``), coded under (p_gg, p_-, p_+, p_ee),
    plus the seed itself.
    """
    pops, joint = _model_tables(cfg.params)
    if cfg.demon_mode is DemonMode.RANDOM:
        stream, probs, seed_bits = rec.symbols, joint, 0
    else:
        if internal is None:
            raise ContractError("deterministic demon needs the pre-collapse internal states")
        stream, probs, seed_bits = np.asarray(internal), pops, SEED_BITS
    nbytes = rangecoder.arithmetic_encode(stream, probs)
    return ErasureCost(8 * nbytes + seed_bits, rangecoder.ideal_bits(stream, probs), seed_bits)


def _process_chunk(cfg: McConfig, start: int, stop: int):
    ens = sample_ensemble(cfg, start, stop)
    ens, m, _ = collective_measurement(ens, cfg)
    rec = demon_readout(ens)
    sym = rec.symbols
    cat = ens.internal.astype(np.int64) * 8 + ens.uncoupled.astype(np.int64) * 4 + sym
    table = np.bincount(cat, minlength=_N_CATEGORIES)
    return sym, ens.internal, table, m


def _plugin_entropy(counts: np.ndarray) -> float:
    n = counts.sum()
    p = counts[counts > 0] / n
    return float(-(p * np.log(p)).sum())


def run(cfg: McConfig, threads: int = 1, dump=None) -> McReport:
    """Run the full cycle on ``cfg.n_boxes`` boxes and assemble the work ledger.

    ``threads`` only changes speed.  ``dump`` (path or binary file) receives
    the joint outcome record in the QRMC format.
    """
    p = cfg.params
    bounds = [(s, min(s + cfg.chunk_size, cfg.n_boxes)) for s in range(0, cfg.n_boxes, cfg.chunk_size)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _process_chunk(cfg, *b), bounds))
    else:
        parts = [_process_chunk(cfg, *b) for b in bounds]

    symbols = np.concatenate([x[0] for x in parts])
    internal = np.concatenate([x[1] for x in parts])
    table = np.sum([x[2] for x in parts], axis=0).reshape(4, 2, 4)
    m = sum(x[3] for x in parts)
    n = cfg.n_boxes

    rec = OutcomeRecord(symbols >> 1, symbols & 1, m)
    cost = erasure_cost(rec, cfg, internal)
    if dump is not None:
        record.write(dump, symbols)

    pops, joint = _model_tables(p)
    t = p.temperature
    lam = p.lam
    s_int = infotheory.shannon(pops)
    ln2 = math.log(2)

    # per-category values, then exact integer-weighted sums in a fixed order
    terms_gain, terms_probe, w_vals, w_counts = [], [], [], []
    for i in range(4):
        sign = 1.0 if i == MINUS else -1.0 if i == PLUS else 0.0
        for unc in (0, 1):
            for s in range(4):
                c = int(table[i, unc, s])
                if c == 0:
                    continue
                gain = sign * lam if unc else 0.0
                probe = 0.0 if unc else sign * lam
                info = -math.log2(joint[s]) if cfg.demon_mode is DemonMode.RANDOM else -math.log2(pops[i])
                terms_gain.append(c * gain)
                terms_probe.append(c * probe)
                w_vals.append(gain + t * s_int - t * ln2 * info)
                w_counts.append(c)

    gain_mean = math.fsum(terms_gain) / n
    w_ideal_mean = math.fsum(c * w for c, w in zip(w_counts, w_vals)) / n
    if n > 1:
        var = math.fsum(c * (w - w_ideal_mean) ** 2 for c, w in zip(w_counts, w_vals)) / (n - 1)
        stderr = math.sqrt(var / n)
    else:
        stderr = math.nan
    w_net_mean = gain_mean + t * s_int - t * ln2 * cost.bits / n

    joint_counts = table.sum(axis=(0, 1))
    internal_counts = table.sum(axis=(1, 2))
    h_joint = _plugin_entropy(joint_counts)
    h_int = _plugin_entropy(internal_counts)
    p_e = float(model._excited_population(p.omega, p.lam, p.beta))
    probe = infotheory.probe_information(n, p_e) if n >= 2 else infotheory.ProbeInformation(0.0, 0.0)

    return McReport(
        n_boxes=n,
        seed=cfg.seed,
        mode=cfg.demon_mode,
        w_net_mean=w_net_mean,
        w_net_stderr=stderr,
        ratchet_gain_mean=gain_mean,
        w_probe_mean=math.fsum(terms_probe) / n,
        erasure_bits_per_box=cost.bits / n,
        ideal_erasure_bits_per_box=cost.ideal_bits / n,
        coder_overhead_bits=cost.coder_overhead_bits,
        probe_bits_per_box=probe.paper_form,
        probe_bits_per_box_gaussian=probe.gaussian_form,
        m=m,
        joint_entropy_empirical=h_joint,
        internal_entropy_empirical=h_int,
        delta_empirical=h_joint - h_int,
        analytic=engine.ratchet_cycle(p, cfg.demon_mode),
        params=p,
    )
