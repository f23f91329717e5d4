from ._dtf import *  # noqa: F401,F403
