"""Clifford simulation of the conversion gadgets and code-capacity Monte Carlo."""

from .conversions import *  # noqa: F401,F403
from .gadgets import *  # noqa: F401,F403
from .tableau import Tableau, TableauError  # noqa: F401
from .montecarlo import MODES, MonteCarloResult, monte_carlo  # noqa: F401
