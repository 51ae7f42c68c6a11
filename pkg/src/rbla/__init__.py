"""Rota-Baxter Lie algebras over the rationals and their extending structures."""

from .classify import (DecompositionContext, EquivalenceWitness, decompose, psi_from_witness,
                       transform_datum)
from .core import (LieAlgebra, RBLieAlgebra, check_lie, check_rb, check_rb_lie, check_rb_morphism,
                   fixture, rb)
from .errors import RBLAError
from .extending import ExtendingDatum, check_unified_axioms, unified_product, validate_datum
from .flag import ExtendedDerivation, check_extended_derivation, decide_exder_equiv, partition_exders

__version__ = "0.1.0"
