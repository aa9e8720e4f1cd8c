"""Orthogonal multiresolution analyses and wavelets on p-adic Vilenkin groups.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
