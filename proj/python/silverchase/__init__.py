from ._silverchase import *  # noqa: F401,F403
