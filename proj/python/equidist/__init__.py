"""Exact dyadic sequences on [0,1]: uniform-distribution tests, residue-class
partitions, tagged counting, QMC integration, and seeded experiments.

The heavy lifting happens in the compiled ``_core`` module; this package adds
dict-returning conveniences for the experiment reports.
"""

import json as _json

from ._core import (
    ConfigError,
    EndpointRule,
    IntegrateResult,
    Interval,
    Partition,
    ResolutionExhausted,
    Sequence,
    TaggedSequence,
    UnitPoint,
    Verdict,
    WeylReport,
    WeylRow,
    __version__,
    builtin_continuous_integrands,
    builtin_integrands,
    default_schedule,
    diagonal_spoiler,
    dyadic_grid,
    hlawka_experiment_json,
    iid_uniform,
    interval_count,
    interval_count_ratio,
    is_member,
    kronecker,
    lift_to_tag,
    parse_grid,
    parse_interval,
    parse_unit_point,
    pick_in_interval,
    qmc_integrate,
    quadrature_reference,
    sample_tagged,
    slln_experiment_json,
    star_discrepancy,
    tag_of,
    tagged_count,
    tagged_count_ratio,
    tagged_integrate,
    tagged_weyl_check,
    ud_verdict,
    van_der_corput,
    witness_tags,
)

__all__ = [
    "ConfigError",
    "EndpointRule",
    "IntegrateResult",
    "Interval",
    "Partition",
    "ResolutionExhausted",
    "Sequence",
    "TaggedSequence",
    "UnitPoint",
    "Verdict",
    "WeylReport",
    "WeylRow",
    "__version__",
    "builtin_continuous_integrands",
    "builtin_integrands",
    "default_schedule",
    "diagonal_spoiler",
    "dyadic_grid",
    "hlawka_experiment",
    "hlawka_experiment_json",
    "iid_uniform",
    "interval_count",
    "interval_count_ratio",
    "is_member",
    "kronecker",
    "lift_to_tag",
    "parse_grid",
    "parse_interval",
    "parse_unit_point",
    "pick_in_interval",
    "qmc_integrate",
    "quadrature_reference",
    "sample_tagged",
    "slln_experiment",
    "slln_experiment_json",
    "star_discrepancy",
    "tag_of",
    "tagged_count",
    "tagged_count_ratio",
    "tagged_integrate",
    "tagged_weyl_check",
    "ud_verdict",
    "van_der_corput",
    "witness_tags",
]


def slln_experiment(**kwargs):
    """Run the seeded mean-convergence experiment; return the report as a dict.

    Keyword arguments mirror ``slln_experiment_json``: trials, length, epsilon,
    tag, m, p, seed, delta, threads, integrand.
    """
    return _json.loads(slln_experiment_json(**kwargs))


def hlawka_experiment(**kwargs):
    """Run the seeded interval-distribution experiment; return the report as a
    dict.

    Keyword arguments mirror ``hlawka_experiment_json``: trials, length,
    epsilon, tag, m, p, seed, delta, threads, grid.
    """
    return _json.loads(hlawka_experiment_json(**kwargs))
