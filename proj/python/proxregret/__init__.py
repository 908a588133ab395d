"""Proximal regret for online learners: comparators, prox operators,
learners, regret accounting and bounds."""

from ._proxregret import *  # noqa: F401,F403
from ._proxregret import Error, __doc__  # noqa: F401
