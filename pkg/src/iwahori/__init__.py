"""Exact computations in Iwahori-Hecke algebras (Bernstein presentation)."""

from .hecke import HeckeAlgebra, HeckeElt, hecke_algebra
from .laurent import Laurent, RatFunc
from .rootdata import ExtElt, RootDatum, WeylElt, preset_datum

__all__ = ["ExtElt", "HeckeAlgebra", "HeckeElt", "Laurent", "RatFunc", "RootDatum",
           "WeylElt", "hecke_algebra", "preset_datum"]
__version__ = "0.1.0"
