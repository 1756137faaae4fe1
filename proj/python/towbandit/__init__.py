"""Tug-of-war two-armed bandit engine driven by a two-valued Markov signal.

Thin wrapper over the compiled extension; see the project README for the
full API tour.
"""

from ._towbandit import *  # noqa: F401,F403
from ._towbandit import __version__  # noqa: F401
