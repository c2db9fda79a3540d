"""Bilinear permutation polynomials over GF(2^N) and their compositional inverses."""

from .field import FieldCtx
from .linearized import LinearizedPoly
from .perms import BlokhuisSpec, LaigleChapuySpec, TowerSpec

__version__ = "0.1.0"

__all__ = ["FieldCtx", "LinearizedPoly", "BlokhuisSpec", "LaigleChapuySpec", "TowerSpec"]
