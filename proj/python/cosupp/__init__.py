"""Python surface for the cosupport engine.

Thin wrappers over the ``_cosupp`` extension: ring/prime handles, the main
query operations, and ``run`` for whole programs in the cosupp language.
"""

import json as _json

try:
    from cosupp import _cosupp as _ext  # installed layout
except ImportError:
    import _cosupp as _ext  # build tree on PYTHONPATH

Prime = _ext.Prime
Ring = _ext.Ring
SpecSet = _ext.SpecSet
cosupp_injective = _ext.cosupp_injective
cosupp_kappa = _ext.cosupp_kappa
cosupp_module = _ext.cosupp_module
cr_criterion = _ext.cr_criterion
describe = _ext.describe
member = _ext.member
prime = _ext.prime
ring = _ext.ring
supp_module = _ext.supp_module
_run = _ext.run

__all__ = [
    "Prime",
    "Ring",
    "SpecSet",
    "cosupp_injective",
    "cosupp_kappa",
    "cosupp_module",
    "cr_criterion",
    "describe",
    "member",
    "prime",
    "ring",
    "run",
    "supp_module",
]


def run(text, **options):
    """Execute a program and return the parsed JSON report."""
    report = _run(text, **options)
    out = _json.loads(report["json"])
    out["had_errors"] = report["had_errors"]
    out["human"] = report["human"]
    return out
