from ._ionread import *  # noqa: F401,F403
from ._ionread import __doc__  # noqa: F401
