"""
Permutation groups for the p-local computations.
So far, the package provides:
    - the materialized permutation-group kernel (groupcore)
    - the named groups and the group-spec grammar (catalog)
"""
from .catalog import GroupSpec, build, catalog_specs, parse_spec, spec_order
from .groupcore import (Permutation, PermGroup, QuotientGroup, Subgroup,
                        centralizer, closure, frattini, normalizer, p_core,
                        p_residual, quotient_group, sylow, transporter)

__all__ = ["GroupSpec", "build", "catalog_specs", "parse_spec", "spec_order",
           "Permutation", "PermGroup", "QuotientGroup", "Subgroup",
           "centralizer", "closure", "frattini", "normalizer", "p_core",
           "p_residual", "quotient_group", "sylow", "transporter"]
