"""Exact combinatorics of toric DM stacks: stacky fans, Gale duality, twisted
polytopes, the shifted-wedge poset and the functor from line-bundle complexes
to complexes of costandard objects, plus the conical Lagrangian."""

from .errors import (DimensionError, FanFileError, HypothesisError, IncompatiblePolytopeError,
                     InvalidComplexError, InvalidFanError, NonSimplicialError, NotCompactError, NotCompleteError,
                     NotMonomialError, ToricError)
from .fanfile import bundled, bundled_morphism, load_morphism, parse, serialize
from .stackyfan import StackyFan, StackyFanMorphism

__version__ = "0.1.0"
