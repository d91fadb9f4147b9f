"""Exact verification of twisted tensor products of algebras, coalgebras and Frobenius algebras."""

from __future__ import annotations

from .scalar import FieldSpec, Scalar, characteristic, root_of_unity
from .tensor import (
    DiagramPath,
    Grading,
    LinearMap,
    PartialLinearMap,
    Space,
    Vector,
    compose,
    ground,
    identity,
    invert,
    maps_equal,
    permutation,
    tensor_map,
    tensor_space,
)
from .structures import (
    AlgebraData,
    Check,
    CoalgebraData,
    FrobeniusData,
    Report,
    check_algebra,
    check_bialgebra,
    check_coalgebra,
    check_frobenius,
    check_nondegenerate,
    check_separable,
    check_special,
    check_symmetric,
    copairing_from_frobenius,
    frobenius_from_pairing,
    nakayama_from_pairing,
    pairing_from_frobenius,
)
from .twist import (
    TwistingMap,
    bicharacter_twist,
    build_twisted_algebra,
    check_bialgebra_obstruction,
    check_coalgebra_compat,
    check_frobenius_inheritance,
    check_nakayama_candidates,
    check_separability_transfer,
    check_special_transfer,
    check_twisting,
    explicit_twist,
    extend_twist_from_generators,
    graded_group_twist,
    inherited_frobenius,
    iterated_twist,
    trivial_twist,
    twisted_copairing,
    twisted_pairing,
)

__version__ = "0.1.0"
