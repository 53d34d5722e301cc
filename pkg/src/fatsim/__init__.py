"""Finite automata with advice tapes: simulation, constructions and analysis."""

from .core import (
    LEND,
    REND,
    Alphabet,
    Choice,
    HeadMode,
    Machine,
    MachineError,
    Move,
    ValidationReport,
    specialize_with_advice,
    validate_machine,
)
from .engine import RunOutcome, Verdict, run, run_language_sweep, step_bound

__version__ = "0.1.0"

__all__ = [
    "LEND", "REND", "Alphabet", "Choice", "HeadMode", "Machine", "MachineError", "Move",
    "RunOutcome", "ValidationReport", "Verdict", "run", "run_language_sweep",
    "specialize_with_advice", "step_bound", "validate_machine",
]
