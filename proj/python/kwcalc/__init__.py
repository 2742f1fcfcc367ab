"""Exact calculus for graded brackets over a metric vector bundle.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (
    BundleSpec,
    ExampleStructure,
    GradedElement,
    HigherBracket,
    KwError,
    MultiBracket,
    bar_eval,
    bar_symbol,
    builtin_examples,
    check_closure,
    check_filippov,
    check_pre_courant,
    extend_to_functions,
    higher_bracket,
    higher_wedge,
    interior_eval,
    interior_eval_unshuffle,
    interior_product,
    kw_bracket,
    kw_bracket_eval,
    kw_bracket_expansion,
    kw_eval,
    kw_eval_tilde,
    kw_symbol,
    kw_wedge,
    kw_wedge_eval,
    pairing,
    parse,
    pbracket,
    run_cli,
    section_pairing,
)

__all__ = [
    "BundleSpec",
    "ExampleStructure",
    "GradedElement",
    "HigherBracket",
    "KwError",
    "MultiBracket",
    "bar_eval",
    "bar_symbol",
    "builtin_examples",
    "check_closure",
    "check_filippov",
    "check_pre_courant",
    "extend_to_functions",
    "higher_bracket",
    "higher_wedge",
    "interior_eval",
    "interior_eval_unshuffle",
    "interior_product",
    "kw_bracket",
    "kw_bracket_eval",
    "kw_bracket_expansion",
    "kw_eval",
    "kw_eval_tilde",
    "kw_symbol",
    "kw_wedge",
    "kw_wedge_eval",
    "pairing",
    "parse",
    "pbracket",
    "run_cli",
    "section_pairing",
]
