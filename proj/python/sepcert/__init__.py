from ._sepcert import *  # noqa: F401,F403
from ._sepcert import __doc__  # noqa: F401
