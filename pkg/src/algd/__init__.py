"""Exact finite-dimensional Hopf algebroids: constructions, axiom checks,
bisection groups, nonabelian 2-cocycle cohomology, twists and finite duals."""

from .field import GF, QQ, Field
from .groups import FiniteGroup, cyclic_group, symmetric_group_s3
from .hopf import (
    CoquasiBialgebra,
    CQTStructure,
    FDAlgebra,
    FDCoalgebra,
    HopfAlgebra,
    LinMap,
    dual_hopf,
    function_algebra,
    group_algebra,
)
from .algebroid import (
    AlgebroidMorphism,
    CoquasiLeftBialgebroid,
    HopfData,
    LeftBialgebroid,
    check_automorphism,
    check_bialgebroid,
    check_coquasi_algebroid,
    check_hopf_identities,
    make_hopf,
)
from .report import LawCheck, Report

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "Field",
    "FiniteGroup",
    "cyclic_group",
    "symmetric_group_s3",
    "CoquasiBialgebra",
    "CQTStructure",
    "FDAlgebra",
    "FDCoalgebra",
    "HopfAlgebra",
    "LinMap",
    "dual_hopf",
    "function_algebra",
    "group_algebra",
    "AlgebroidMorphism",
    "CoquasiLeftBialgebroid",
    "HopfData",
    "LeftBialgebroid",
    "check_automorphism",
    "check_bialgebroid",
    "check_coquasi_algebroid",
    "check_hopf_identities",
    "make_hopf",
    "LawCheck",
    "Report",
]
