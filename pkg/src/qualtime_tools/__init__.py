from .__about__ import __version__
from .api import check_width, count, load_instance, problem_of, solve, witness

__all__ = [
    "__version__",
    "check_width",
    "count",
    "load_instance",
    "problem_of",
    "solve",
    "witness",
]
