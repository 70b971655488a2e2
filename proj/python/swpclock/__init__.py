"""Salecker-Wigner-Peres clock times for 1D scattering through asymmetric
rectangular barriers. Thin wrapper around the C++ core."""

try:
    from ._swpclock import *  # noqa: F401,F403  (installed wheel layout)
    from ._swpclock import __version__  # noqa: F401
except ImportError:  # in-tree CMake build: module sits on PYTHONPATH
    from _swpclock import *  # noqa: F401,F403
    from _swpclock import __version__  # noqa: F401
