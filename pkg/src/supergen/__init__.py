"""Exact construction of simple Lie superalgebras and one-element generation certificates."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    EVEN,
    ODD,
    Element,
    StructuralError,
    SuperAlgebra,
    UsageError,
    bracket,
    check_axioms,
    closure,
    generated_ideal,
    generated_subalgebra,
    generated_submodule,
)
from .families import ACCEPTANCE_MATRIX, Family, parse_family  # noqa: E402
from .generate import Certificate, GeneratorCandidate, candidate, certify, certify_algebra  # noqa: E402

__all__ = [
    "EVEN", "ODD", "Element", "StructuralError", "SuperAlgebra", "UsageError", "bracket",
    "check_axioms", "closure", "generated_ideal", "generated_subalgebra", "generated_submodule",
    "ACCEPTANCE_MATRIX", "Family", "parse_family", "Certificate", "GeneratorCandidate",
    "candidate", "certify", "certify_algebra",
]
