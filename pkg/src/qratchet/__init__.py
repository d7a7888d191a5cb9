"""Quantum ratchet heat engine: closed-form ledgers, discord and a demon Monte Carlo."""

from .engine import DemonMode, generic_cycle, local_cycle, ratchet_cycle, second_law_check
from .model import EngineParams

__version__ = "0.1.0"

__all__ = [
    "DemonMode",
    "EngineParams",
    "generic_cycle",
    "local_cycle",
    "ratchet_cycle",
    "second_law_check",
]
