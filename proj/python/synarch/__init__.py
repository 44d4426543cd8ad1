"""Related-term search over hyperlinked, categorized corpora."""

import json

from ._core import (
    ArgumentError,
    Corpus,
    NotFoundError,
    ParseError,
    SynarchError,
    ValidationError,
    cluster_categories,
    generate_synthetic,
    iterate_hits,
    load_corpus,
    query_json,
    validate_file,
)

__all__ = [
    "ArgumentError",
    "Corpus",
    "NotFoundError",
    "ParseError",
    "SynarchError",
    "ValidationError",
    "cluster_categories",
    "generate_synthetic",
    "iterate_hits",
    "load_corpus",
    "query",
    "query_json",
    "validate_file",
]


def query(corpus, word, **params):
    """Search result for ``word`` as a dict; keyword arguments override defaults."""
    return json.loads(query_json(corpus, word, **params))
