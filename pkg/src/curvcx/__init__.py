"""Polygonal complexes with planar substructures: exact combinatorial
curvature, dual-graph metric geometry, isoperimetric bounds, and spectra of
the face Laplacian, all at desk scale with certified truncation handling."""

from .core import (
    Apartment,
    DegreeProfile,
    LinkClass,
    LinkGraph,
    PolygonalComplex,
    Truncation,
    ValidationCheck,
    ValidationReport,
    apartment_interior_vertices,
    build_complex,
    classify_link,
    degree_profile,
    link,
    validate_pcps,
    validate_tessellation,
)
from .curvature import (
    CoxeterClass,
    CurvatureReport,
    MyersEvidence,
    corner_curvature,
    coxeter_classify,
    curvature_report,
    face_curvature,
    gauss_bonnet_sum,
    myers_evidence,
)
from .errors import (
    BudgetExceededError,
    ComplexError,
    CurvcxError,
    GeneratorError,
    UntrustedRegionError,
)
from .fileio import emit, load, parse, save
from .generators import (
    FAMILIES,
    bipartite_squares,
    book,
    coxeter_triangle,
    product_of_trees,
    regular_tessellation,
    spherical_solid,
)
from .isoperimetry import (
    CheegerBounds,
    CheegerWitness,
    cheeger_at_infinity,
    cheeger_bruteforce,
    cheeger_global_minimum,
    cheeger_lower_bounds,
    local_cheeger_term,
    witness,
)
from .metric import (
    BigonEnumeration,
    FaceMetric,
    GeodesicInterval,
    SphereReport,
    SphereRow,
    bigon_certificate,
    cut_locus,
    distance,
    enumerate_bigons,
    face_metric,
    four_point_delta,
    interval,
    spheres,
)
from .spectral import (
    BallMatrix,
    DirichletSolution,
    EigenfunctionCertificate,
    EigenfunctionCheck,
    NearestNeighborOperator,
    SpectralReport,
    finite_support_eigenfunctions,
    lambda0_bound,
    laplacian_matrix,
    solve_dirichlet,
    spectrum,
    verify_eigenfunction,
    wheel_function,
)

__version__ = "0.1.0"

__all__ = [
    "Apartment",
    "BallMatrix",
    "BigonEnumeration",
    "BudgetExceededError",
    "CheegerBounds",
    "CheegerWitness",
    "ComplexError",
    "CoxeterClass",
    "CurvatureReport",
    "CurvcxError",
    "DegreeProfile",
    "DirichletSolution",
    "EigenfunctionCertificate",
    "EigenfunctionCheck",
    "FAMILIES",
    "FaceMetric",
    "GeneratorError",
    "GeodesicInterval",
    "LinkClass",
    "LinkGraph",
    "MyersEvidence",
    "NearestNeighborOperator",
    "PolygonalComplex",
    "SpectralReport",
    "SphereReport",
    "SphereRow",
    "Truncation",
    "UntrustedRegionError",
    "ValidationCheck",
    "ValidationReport",
    "apartment_interior_vertices",
    "bigon_certificate",
    "bipartite_squares",
    "book",
    "build_complex",
    "cheeger_at_infinity",
    "cheeger_bruteforce",
    "cheeger_global_minimum",
    "cheeger_lower_bounds",
    "classify_link",
    "corner_curvature",
    "coxeter_classify",
    "coxeter_triangle",
    "curvature_report",
    "cut_locus",
    "degree_profile",
    "distance",
    "emit",
    "enumerate_bigons",
    "face_curvature",
    "face_metric",
    "finite_support_eigenfunctions",
    "four_point_delta",
    "gauss_bonnet_sum",
    "interval",
    "lambda0_bound",
    "laplacian_matrix",
    "link",
    "load",
    "local_cheeger_term",
    "myers_evidence",
    "parse",
    "product_of_trees",
    "regular_tessellation",
    "save",
    "solve_dirichlet",
    "spectrum",
    "spheres",
    "spherical_solid",
    "validate_pcps",
    "validate_tessellation",
    "verify_eigenfunction",
    "wheel_function",
    "witness",
]
