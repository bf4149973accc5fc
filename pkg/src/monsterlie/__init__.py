"""Exact computations in the Monster Lie algebra and the Fricke monstrous Lie algebras."""

from .algebra import AlgebraElement, MonsterAlgebra, cartan_involution, check_triple, degree_derivation
from .cartan import BlockIndex, BorcherdsCartanMatrix, RootVector, block_size
from .freelie import GeneratorSet, bracket_normalize, fricke_generators, graded_dimension, lyndon_basis
from .moonshine import fricke_transform, mckay_thompson, root_multiplicity
from .qseries import QSeries, eta, j_series, theta4

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "MonsterAlgebra", "cartan_involution", "check_triple", "degree_derivation",
    "BlockIndex", "BorcherdsCartanMatrix", "RootVector", "block_size",
    "GeneratorSet", "bracket_normalize", "fricke_generators", "graded_dimension", "lyndon_basis",
    "fricke_transform", "mckay_thompson", "root_multiplicity",
    "QSeries", "eta", "j_series", "theta4",
]
