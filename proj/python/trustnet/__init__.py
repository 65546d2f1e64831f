"""Python bindings for the trustnet simulator."""

from ._core import (  # noqa: F401
    ComparisonOutcome,
    TrustParams,
    TrustnetError,
    builtin_names,
    builtin_scenario,
    compare_policy,
    compute_er,
    compute_ir,
    compute_re,
    compute_ri,
    compute_t,
    load_scenario,
    opinion_score,
    rate,
    render_csv,
    run_scenario,
)


def run_builtin(name, seed=1, rounds=None, audit_log=None):
    """Run a built-in configuration and return the report dict."""
    config = builtin_scenario(name, seed)
    if rounds is not None:
        config["rounds"] = rounds
    return run_scenario(config, audit_log)
