"""Reasoning, concept relaxation and knowledge base revision for description logics."""

from ._core import (
    BudgetExceeded,
    ConflictingInput,
    DialectViolation,
    Error,
    InvalidArgument,
    KnowledgeBase,
    NotEnoughExceptions,
    ParseError,
    ResourceExceeded,
    UnsupportedShape,
    check_postulates,
    check_representation,
    entails,
    equivalent,
    is_coherent,
    is_satisfiable,
    normalize_concept,
    parse_kb,
    relax_concept,
    relax_theory,
    render,
    revise,
    subsumes,
    unsat_named_concepts,
)


def load_kb(path):
    with open(path, encoding="utf-8") as f:
        return parse_kb(f.read())


__all__ = [name for name in dir() if not name.startswith("_")]
