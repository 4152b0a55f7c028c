"""Coded Byzantine agreement: coding layer and simulation drivers.

Thin wrapper around the compiled ``_core`` extension. The extension
lives inside this package when installed via pip; when running against
a plain CMake build tree it sits next to the package on ``sys.path``.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # CMake build tree: bare extension on sys.path
    from _core import *  # type: ignore # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "CodeParams",
    "derive_params",
    "committee",
    "gf_add",
    "gf_mul",
    "gf_inv",
    "lagrange_vector",
    "encode",
    "decode",
    "stripe",
    "unstripe",
    "craft_colliding_messages",
    "adversaries",
    "run_ba",
    "run_bb",
    "run_ba_committee",
]
