"""Botnet identification from message innovation rates.

Thin re-export of the compiled extension. The heavy lifting (trace
generation, indicator estimation, the pairwise identification threshold
and the pivot-scan detector) lives in C++; see the project README for the
matching command-line interface.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed wheel layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # in-tree build: _core.so sits on sys.path directly
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
