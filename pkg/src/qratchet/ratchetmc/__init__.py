"""Operational Monte Carlo of the ratchet demon."""

from .rangecoder import arithmetic_encode, decode, encode
from .simulation import (
    BoxSample,
    Ensemble,
    ErasureCost,
    McConfig,
    McReport,
    OutcomeRecord,
    collective_measurement,
    demon_readout,
    erasure_cost,
    run,
    sample_ensemble,
)

__all__ = [
    "BoxSample",
    "Ensemble",
    "ErasureCost",
    "McConfig",
    "McReport",
    "OutcomeRecord",
    "arithmetic_encode",
    "collective_measurement",
    "decode",
    "demon_readout",
    "encode",
    "erasure_cost",
    "run",
    "sample_ensemble",
]
