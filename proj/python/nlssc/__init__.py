"""Non-negative local subspace sparse clustering.

Data arrays are (n_samples, n_features); the code matrix Gamma is
(n_samples, n_samples) with column j holding the code of sample j.
"""

import json

from . import _core
from ._core import (
    InputError,
    NumericalError,
    build_gram,
    clustering_error,
    generate_synthetic,
    nmi,
    restore_links,
    spectral_cluster,
    svt,
    sylvester_solve,
)

__all__ = [
    "InputError",
    "NumericalError",
    "admm_solve",
    "build_gram",
    "clustering_error",
    "cluster",
    "generate_synthetic",
    "nmi",
    "restore_links",
    "spectral_cluster",
    "svt",
    "sylvester_solve",
]


def _config(options):
    # lambda is a keyword, accept lambda_ too
    if "lambda_" in options:
        options["lambda"] = options.pop("lambda_")
    return json.dumps(options)


def admm_solve(gram, **options):
    """Solve for the non-negative affine code of a Gram matrix.

    Returns (gamma, report). Options use config-file names (lambda_, mu, k,
    rho0, epsilon, max_iters, ...).
    """
    return _core.admm_solve(gram, _config(options))


def cluster(x=None, *, gram=None, labels=None, include_gamma=False, **options):
    """Full pipeline. Returns a dict with the parsed results document under
    "results", the code matrix under "code" and every spectral run under
    "assignments"."""
    out = _core.run_cluster(x, gram, _config(options), labels, include_gamma)
    out["results"] = json.loads(out.pop("results_json"))
    return out
