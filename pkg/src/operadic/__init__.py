"""Exact deformation calculus in the composition pre-operad of co-operations."""

from .scalars import Field, Residue
from .preoperad import (CoOp, DegreeBound, ModuleSpace, apply, bracket, identity_coop,
                        partial_compose, total_compose)
from .deformation import (DeformationContext, associator, bianchi_residual,
                          coassociator_direct, coboundary, commutation_relation_residual,
                          covariant_derivative, d_square_residual, deformation_residual,
                          derivation_property_residual, nabla_square_residual,
                          prolongation_residual)
from .cohomology import coboundary_matrix, cohomology_dimensions
from .linalg import exact_rank

__version__ = "0.1.0"
