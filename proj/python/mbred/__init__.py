"""Classical extensions of quantum probability at finite Hilbert-space dimension.

Thin wrapper over the C++ core: projective-space geometry, the barycenter
reduction map and its adjoint, POVM kernels with stochastic simulation, and
the example classical extensions.
"""

import json as _json

try:
    from ._mbred import *  # noqa: F401,F403
    from ._mbred import __version__, run_experiment_json  # noqa: F401
except ImportError:  # development tree: extension built next to the package
    from _mbred import *  # noqa: F401,F403
    from _mbred import __version__, run_experiment_json  # noqa: F401


def run(experiment, dims=(), samples=-1, seed=1, tolerances=None, example=1):
    """Run one verification experiment and return the report as a dict.

    Mirrors the ``mbred`` CLI: ``dims``/``samples`` fall back to the
    experiment defaults, every numeric report field is a pure function of the
    arguments.
    """
    body = run_experiment_json(
        experiment,
        list(dims),
        samples,
        seed,
        dict(tolerances or {}),
        example,
    )
    return _json.loads(body)
