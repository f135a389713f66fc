"""Generalized Heisenberg algebras H(f).

Exact normal-form arithmetic for the algebra on generators x, h, y with

    h*x = x*f(h),   y*h = f(h)*y,   y*x - x*y = f(h) - h,

its center, the isomorphism problem between two such algebras, and the
finite-dimensional simple modules realized as explicit matrices.
"""

from .algebra import (
    FreeModuleElement,
    GHAElement,
    Presentation,
    PresentationMismatchError,
    commutator,
    free_module_action,
    is_central,
)
from .config import CONFIG, EnumerationConfig, NumericConfig
from .modules import (
    CYCLIC_X,
    CYCLIC_Y,
    NILPOTENT_X,
    ClassifyError,
    CyclicXDescriptor,
    CyclicYDescriptor,
    DescriptorError,
    MatrixModule,
    ModuleFamily,
    NilpotentXDescriptor,
    RelationReport,
    build,
    classify,
    descriptor_problems,
    enumerate_simples,
    is_simple,
    modules_isomorphic,
    verify_relations,
)
from .parser import ParseError, parse_element, parse_poly, parse_scalar
from .polys import (
    ContinuumOfOrbitsError,
    DegreeOverflowError,
    Orbit,
    OrbitSet,
    Poly,
    RootFindingError,
    exact_roots,
    iterate,
    orbit_through,
    periodic_points,
    poly_gcd,
    roots,
)
from .scalars import (
    ApproxComplex,
    BackendMismatchError,
    CyclotomicNumber,
    approx,
    as_scalar,
    backend_of,
    exact,
    root_of_unity_order,
    zeta,
)
from .structure import (
    CenterDescription,
    IsoVerdict,
    IsoWitness,
    affine_conjugate,
    center,
    compositional_inverse_linear,
    iso_check,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxComplex",
    "BackendMismatchError",
    "CONFIG",
    "CYCLIC_X",
    "CYCLIC_Y",
    "CenterDescription",
    "ClassifyError",
    "ContinuumOfOrbitsError",
    "CyclicXDescriptor",
    "CyclicYDescriptor",
    "CyclotomicNumber",
    "DegreeOverflowError",
    "DescriptorError",
    "EnumerationConfig",
    "FreeModuleElement",
    "GHAElement",
    "IsoVerdict",
    "IsoWitness",
    "MatrixModule",
    "ModuleFamily",
    "NILPOTENT_X",
    "NilpotentXDescriptor",
    "NumericConfig",
    "Orbit",
    "OrbitSet",
    "ParseError",
    "Poly",
    "Presentation",
    "PresentationMismatchError",
    "RelationReport",
    "RootFindingError",
    "affine_conjugate",
    "approx",
    "as_scalar",
    "backend_of",
    "build",
    "center",
    "classify",
    "commutator",
    "compositional_inverse_linear",
    "descriptor_problems",
    "enumerate_simples",
    "exact",
    "exact_roots",
    "free_module_action",
    "is_central",
    "is_simple",
    "iso_check",
    "iterate",
    "modules_isomorphic",
    "orbit_through",
    "parse_element",
    "parse_poly",
    "parse_scalar",
    "periodic_points",
    "poly_gcd",
    "roots",
    "root_of_unity_order",
    "verify_relations",
    "zeta",
]
