"""Phase-estimation toolkit for deformed-algebra coherent states in a Mach-Zehnder interferometer."""
from .algebra import GLAUBER_PARAMS, AlgebraKind, AlgebraParams, build_ladder_seq, ladder_sq
from .states import CoherentState, ModeMoments, build_coherent_state, moments, vacuum_moments

__version__ = "0.1.0"

__all__ = [
    "AlgebraKind",
    "AlgebraParams",
    "GLAUBER_PARAMS",
    "CoherentState",
    "ModeMoments",
    "build_coherent_state",
    "build_ladder_seq",
    "ladder_sq",
    "moments",
    "vacuum_moments",
    "__version__",
]
