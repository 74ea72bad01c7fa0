"""Finite n-valued Lukasiewicz-Moisil algebras, their dual spaces and
congruences, with every correspondence cross-checked against a brute-force
congruence generator."""

from .algebra import (
    LMnAlgebra,
    Violation,
    boolean_elements,
    check_algebra,
    complement_of,
    make_chain,
    make_power,
    make_product,
    validate_axioms,
)
from .boolean import (
    BooleanCongruenceRecord,
    boolean_congruences,
    boolean_from_element,
    check_permutable,
    is_boolean,
    principal_is_boolean,
    uniformity_report,
)
from .checks import CheckReport, default_corpus, run_suite
from .congruence import (
    LM,
    THETA,
    Congruence,
    SubsetFlags,
    all_congruences,
    all_theta_congruences,
    classify_subset,
    congruence_from_open,
    filter_congruence,
    generate_congruence_oracle,
    is_principal,
    join,
    meet,
    principal_congruence,
    principal_theta_congruence,
    theta_from_subset,
)
from .dot import emit_dot
from .duality import (
    LnPSpace,
    chain_decomposition,
    co_dual,
    dual_hom,
    dual_space,
    round_trip,
    topological_closure,
    validate_space,
)
from .errors import (
    LMKitError,
    ParseError,
    TheoremViolation,
    ValidationError,
)
from .formats import dump_algebra, load_algebra, parse_spec
from .kernels import BACKEND
from .order import (
    Poset,
    build_poset,
    down_set,
    increasing_sets,
    is_convex,
    lattice_from_poset,
    prime_filters,
    sigma,
    up_set,
)

__version__ = "0.1.0"

__all__ = [
    "all_congruences",
    "all_theta_congruences",
    "BACKEND",
    "boolean_congruences",
    "boolean_elements",
    "boolean_from_element",
    "BooleanCongruenceRecord",
    "build_poset",
    "chain_decomposition",
    "check_algebra",
    "check_permutable",
    "CheckReport",
    "classify_subset",
    "co_dual",
    "complement_of",
    "Congruence",
    "congruence_from_open",
    "default_corpus",
    "down_set",
    "dual_hom",
    "dual_space",
    "dump_algebra",
    "emit_dot",
    "filter_congruence",
    "generate_congruence_oracle",
    "increasing_sets",
    "is_boolean",
    "is_convex",
    "is_principal",
    "join",
    "lattice_from_poset",
    "LM",
    "LMKitError",
    "LMnAlgebra",
    "LnPSpace",
    "load_algebra",
    "make_chain",
    "make_power",
    "make_product",
    "meet",
    "parse_spec",
    "ParseError",
    "Poset",
    "prime_filters",
    "principal_congruence",
    "principal_is_boolean",
    "principal_theta_congruence",
    "round_trip",
    "run_suite",
    "sigma",
    "SubsetFlags",
    "TheoremViolation",
    "THETA",
    "theta_from_subset",
    "topological_closure",
    "uniformity_report",
    "up_set",
    "validate_axioms",
    "validate_space",
    "ValidationError",
    "Violation",
]
