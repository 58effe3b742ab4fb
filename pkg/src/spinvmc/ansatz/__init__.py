from .base import Ansatz, ZeroAmplitudeError
from .laughlin import LaughlinAnsatz

__all__ = ["Ansatz", "ZeroAmplitudeError", "LaughlinAnsatz"]
