"""Python front end for the noether library."""

import json

from ._noether import (
    CapabilityError,
    DomainError,
    NoetherError,
    OracleError,
    ParseError,
    ResourceError,
    ValidationError,
    __version__,
    command_names,
    groebner_basis,
    ideal_membership,
    render_text,
    run_tower_suite,
    twisted_cohomology_dims,
)
from ._noether import run_job_json as _run_job_json

__all__ = [
    "CapabilityError",
    "DomainError",
    "NoetherError",
    "OracleError",
    "ParseError",
    "ResourceError",
    "ValidationError",
    "__version__",
    "command_names",
    "groebner_basis",
    "ideal_membership",
    "render_text",
    "run",
    "run_job",
    "run_tower_suite",
    "twisted_cohomology_dims",
]


def run_job(job, timings=False):
    """Run a job (dict or JSON text) and return the report as a dict."""
    text = job if isinstance(job, str) else json.dumps(job)
    return json.loads(_run_job_json(text, timings))


def run(command, payload=None, budgets=None, timings=False):
    job = {"command": command, "payload": payload or {}}
    if budgets:
        job["budgets"] = budgets
    return run_job(job, timings)
