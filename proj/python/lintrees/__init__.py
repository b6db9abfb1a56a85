from ._lintrees import *  # noqa: F401,F403
