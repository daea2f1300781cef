"""Decision support for the requirements generation process.

Three layers: an immutable knowledge base of activities, methods, and
selection criteria; a pure selection engine that recommends and optimizes
method choices against prioritized criteria; and a phase-gated workflow
engine that tracks a requirements-generation session from local analysis
through global evaluation and business concerns. HTTP and CLI front doors
sit on top and share all wire shapes.
"""

__version__ = "0.1.0"

from .kb import KnowledgeBase, load_kb, query_activity, seed_kb, serialize_kb, validate_kb
from .selection import (
    SelectionRequest,
    classify_scenario,
    coverage_vector,
    explain,
    filter_methods,
    minimize_distinct,
    recommend_path,
)

__all__ = [
    "KnowledgeBase",
    "SelectionRequest",
    "__version__",
    "classify_scenario",
    "coverage_vector",
    "explain",
    "filter_methods",
    "load_kb",
    "minimize_distinct",
    "query_activity",
    "recommend_path",
    "seed_kb",
    "serialize_kb",
    "validate_kb",
]
