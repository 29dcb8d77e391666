"""Entropy-satisfying DG solver for 1D nonlinear Fokker-Planck equations.

Thin wrapper around the compiled ``_esdg`` extension module.
"""

try:
    from ._esdg import *  # noqa: F401,F403  (installed wheel layout)
    from . import _esdg as _core
except ImportError:  # development layout: extension sits next to the build tree
    from _esdg import *  # noqa: F401,F403
    import _esdg as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")]
__version__ = "0.1.0"
