"""Select the PBW kernel: compiled if importable, pure Python otherwise.

Set ``TWISTLAB_PURE=1`` to force the fallback.
"""

import os

from ._pbw_py import PbwKernel as PurePbwKernel

try:
    from ._pbw_core import PbwKernel as CompiledPbwKernel
except ImportError:  # extension not built
    CompiledPbwKernel = None

if CompiledPbwKernel is not None and not os.environ.get("TWISTLAB_PURE"):
    PbwKernel = CompiledPbwKernel
else:
    PbwKernel = PurePbwKernel

BACKEND = PbwKernel.backend


def available_backends():
    out = {"python": PurePbwKernel}
    if CompiledPbwKernel is not None:
        out["cython"] = CompiledPbwKernel
    return out
