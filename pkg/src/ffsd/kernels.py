"""Backend selection for the batched survival kernels.

Prefers the compiled extension; falls back to the numpy implementation when
the extension is missing or FFSD_PURE_PYTHON is set to a non-empty value
other than "0". Both backends implement identical semantics.
"""

from __future__ import annotations

import os

if os.environ.get("FFSD_PURE_PYTHON", "0") not in ("", "0"):
    from . import _kernels_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as _impl

        BACKEND = "python"

joint_cdf_batch = _impl.joint_cdf_batch
survival_ie_batch = _impl.survival_ie_batch
