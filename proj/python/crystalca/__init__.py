"""Periodic soliton cellular automata on rectangular crystals.

The heavy lifting happens in the compiled extension; this package simply
re-exports it.  All tableaux, states and contents travel as strings in the
same text formats the command line tool uses.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
