"""Classical and quantum correlations of finite-dimensional quantum states."""

import json

from ._core import (
    DensityMatrix,
    DimensionError,
    Error,
    OptimizerConfig,
    OptimizerError,
    ParseError,
    ValidationError,
    __version__,
    apply_local,
    broadcast_mutual_information,
    fidelity,
    multipartite_mutual_information,
    mutual_information,
    partial_trace,
    petz_recovery_kraus,
    ppt_label,
    read_state_file,
    relative_entropy,
    tensor,
    trace_distance,
    two_copy_broadcast,
    von_neumann_entropy,
    write_corpus,
    write_state_file,
)
from . import _core


def is_cc(rho, tolerance=1e-8):
    """Classicality verdict as a dict with kind, residuals and bases."""
    return json.loads(_core.is_cc_json(rho, tolerance))


def correlation_report(rho, cfg=None, units="bits"):
    """I, lower bounds on I_CQ and I_CC, Delta_CC and discord, as a dict."""
    return json.loads(_core.correlation_report_json(rho, cfg or OptimizerConfig(), units))


def broadcast_search(rho, cfg=None):
    """Best local broadcast candidate found, as a dict."""
    return json.loads(_core.broadcast_search_json(rho, cfg or OptimizerConfig.broadcast_defaults()))
