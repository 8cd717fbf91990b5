"""Excitable-lattice wave-propagation path planner."""

from ._excnn import *  # noqa: F401,F403
from ._excnn import __doc__  # noqa: F401
