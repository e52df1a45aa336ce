"""
Unknot recognition from triangulated knot complements, using normal
surfaces, exact linear programming and crushing.
"""
from .tri import Triangulation, parse_gluing_table, serialize
from .normal import NormalVector
from .pipeline import Result, Verdict, recognize

__version__ = "0.1.0"

__all__ = ["Triangulation", "parse_gluing_table", "serialize", "NormalVector",
           "Result", "Verdict", "recognize"]
