"""Exact-arithmetic toolkit for Legendrian contact homology bookkeeping.

Modules: exact rational/integer linear algebra (`rational`, `lattice`),
moment polytopes and reduction slices (`polytopes`), circle-fibered
contact data and Legendrian lift criteria (`contact`), Reeb chord spectra
with Morse-style generator sets (`chords`), the combinatorial calculus of
treed holomorphic buildings (`buildings`), tameness verification for
Lagrangian cobordisms (`tameness`), and the command-line surface (`cli`).
"""

from .rational import Rational, SubgroupOfRationals, rat, rat_str, subgroup_of_rationals
from .lattice import is_lattice_basis_of_span, smith_normal_form
from .polytopes import (
    ConePolytope,
    Face,
    FillingLine,
    Polytope,
    ReductionSlice,
    codim2_faces,
    cone_on,
    reduction_slice,
    standard_simplex,
)
from .contact import (
    FiberedContact,
    LegendrianLift,
    LiftResult,
    construct,
    holonomy_of_disk,
    lift_exists,
    sphere_over_projective_space,
    tame_pair_check,
)
from .chords import (
    ChordComponent,
    GeneratorSet,
    MorseModel,
    action,
    enumerate_chords,
    generator_set,
)
from .buildings import (
    BuildingType,
    MapType,
    PerturbationSheets,
    action_balance,
    boundary_class,
    boundary_strata,
    domain_dim,
    intersection_multiplicity,
    is_stable,
    merge_sheets,
    pullback_sheets,
    sphere_stratum_dim,
)
from .tameness import (
    CobordismClassData,
    TamenessVerdict,
    check_tame,
    no_cap_filter,
    symplectization_truncation,
)

__all__ = [
    "Rational",
    "SubgroupOfRationals",
    "rat",
    "rat_str",
    "subgroup_of_rationals",
    "smith_normal_form",
    "is_lattice_basis_of_span",
    "Polytope",
    "Face",
    "ConePolytope",
    "FillingLine",
    "ReductionSlice",
    "standard_simplex",
    "cone_on",
    "codim2_faces",
    "reduction_slice",
    "FiberedContact",
    "LegendrianLift",
    "LiftResult",
    "holonomy_of_disk",
    "lift_exists",
    "construct",
    "tame_pair_check",
    "sphere_over_projective_space",
    "ChordComponent",
    "GeneratorSet",
    "MorseModel",
    "enumerate_chords",
    "generator_set",
    "action",
    "BuildingType",
    "MapType",
    "PerturbationSheets",
    "is_stable",
    "domain_dim",
    "sphere_stratum_dim",
    "action_balance",
    "intersection_multiplicity",
    "boundary_strata",
    "merge_sheets",
    "pullback_sheets",
    "boundary_class",
    "CobordismClassData",
    "TamenessVerdict",
    "check_tame",
    "symplectization_truncation",
    "no_cap_filter",
]

__version__ = "0.1.0"
