"""Data ingestion, examples, the end-to-end pipeline and the property harness."""
from .data import (
    FundamentalDomainData,
    bundled_names,
    load_bundled,
    load_fundamental_domain,
    parse_and_validate,
    validate_fundamental_domain,
)
from .examples import NAMED, generate_example, random_fundamental_domain

__all__ = [
    "FundamentalDomainData",
    "bundled_names",
    "load_bundled",
    "load_fundamental_domain",
    "parse_and_validate",
    "validate_fundamental_domain",
    "NAMED",
    "generate_example",
    "random_fundamental_domain",
]
