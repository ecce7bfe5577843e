"""Kernel backend selection.

The hot enumeration loops exist twice: a compiled Cython extension
(asaw._fast) and a pure-python reference (asaw._kernel_pure) with identical
signatures and bit-identical integer outputs.  The compiled backend is
preferred; set ASAW_PURE=1 to force the fallback.  benchmarks/bench_kernels.py
compares the two.
"""

from __future__ import annotations

import os

from . import _kernel_pure as _pure

_impl = _pure
_compiled = False
if os.environ.get("ASAW_PURE") != "1":
    try:
        from . import _fast as _fast_mod

        _impl = _fast_mod
        _compiled = True
    except ImportError:
        pass


def using_compiled() -> bool:
    return _compiled


def backend_name() -> str:
    return "compiled" if _compiled else "pure"


def saw_profiles(d, steps, n_max, prefix=(), want_end=True):
    return _impl.saw_profiles(d, steps, n_max, prefix, want_end)


def j_profile(d, steps, n, prefix=()):
    return _impl.j_profile(d, steps, n, prefix)


def lace_profile(d, steps, n, lace_pack, prefix=()):
    return _impl.lace_profile(d, steps, n, lace_pack, prefix)


def pim_bound_profile(d, steps, n, comp_pack, prefix=()):
    return _impl.pim_bound_profile(d, steps, n, comp_pack, prefix)


# Walk generation stays pure: generation is never the bottleneck, the
# per-walk analysis downstream is.
saw_walks = _pure.saw_walks
