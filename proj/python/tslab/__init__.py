"""Verification laboratory for compactly generated t-structures on D(Z/n)."""

import json as _json

from tslab._core import (
    Complex,
    DomainError,
    Filtration,
    InternalError,
    Module,
    Ring,
    __version__,
    cech,
    classify,
    cohomology,
    compact_dual,
    coresolve,
    enumerate_filtrations,
    generators,
    hom_derived,
    in_aisle,
    in_co_t_coaisle,
    in_coaisle,
    koszul,
    module,
    parse_complex,
    parse_complex_list,
    parse_filtration,
    random_complex,
    ring,
    shift,
    stalk,
    suite_property_names,
    tensor,
    truncate,
    worked_examples,
)
from tslab import _core


def filtration(r, spec):
    """Filtration from a JSON string or a {prime: top} mapping."""
    if isinstance(spec, dict):
        spec = _json.dumps(
            {"cutoffs": [{"prime": p, "top": t} for p, t in sorted(spec.items())]}
        )
    return parse_filtration(r, spec)


def run_suite(config=None, **kwargs):
    """Run the property suite; returns the report as a dict."""
    cfg = dict(config or {})
    cfg.update(kwargs)
    return _json.loads(_core.run_suite(_json.dumps(cfg)))
