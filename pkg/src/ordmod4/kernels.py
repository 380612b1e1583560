"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
implementation is used.  Set ``ORDMOD4_PURE=1`` to force the fallback.
"""

import os

if os.environ.get("ORDMOD4_PURE", "") not in ("", "0"):
    from ._fallback import orders_block, pow_mod, split_n_sums

    BACKEND = "python"
else:
    try:
        from ._kernels import orders_block, pow_mod, split_n_sums

        BACKEND = "cython"
    except ImportError:
        from ._fallback import orders_block, pow_mod, split_n_sums

        BACKEND = "python"

__all__ = ["BACKEND", "orders_block", "pow_mod", "split_n_sums"]
