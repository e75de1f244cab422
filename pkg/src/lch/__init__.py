"""Linearized Legendrian contact homology: DGAs, augmentations, duality checks."""

from .algebra import DGA, NoncommPoly, apply_differential, is_good, validate
from .duality import (DualityInstance, RSolution, arnold_check, feasibility_solve,
                      manifold_class_report, solve_poincare, sphere_duality_check)
from .homology import (BasedChainComplex, GradedMap, LaurentPoly, dualize, homology_field,
                       homology_integral, mapping_cone, poincare_chekanov)
from .linalg import Matrix, smith_invariants
from .linearization import (Augmentation, brute_force_augmentations, conjugate,
                            enumerate_augmentations, linearize)
from .rings import QQ, Z2, ZZ, CoefficientRing, GradingGroup
from .spinning import kunneth_check, spin_complex
from .twocopy import (MorseComplex, TwoCopyData, adjointness_check, assemble, duality_check,
                      verify_relations)

__all__ = [
    "DGA", "NoncommPoly", "apply_differential", "is_good", "validate",
    "DualityInstance", "RSolution", "arnold_check", "feasibility_solve",
    "manifold_class_report", "solve_poincare", "sphere_duality_check",
    "BasedChainComplex", "GradedMap", "LaurentPoly", "dualize", "homology_field",
    "homology_integral", "mapping_cone", "poincare_chekanov",
    "Matrix", "smith_invariants",
    "Augmentation", "brute_force_augmentations", "conjugate", "enumerate_augmentations",
    "linearize",
    "QQ", "Z2", "ZZ", "CoefficientRing", "GradingGroup",
    "kunneth_check", "spin_complex",
    "MorseComplex", "TwoCopyData", "adjointness_check", "assemble", "duality_check",
    "verify_relations",
]
