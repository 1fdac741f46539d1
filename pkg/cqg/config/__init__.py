"""cqg.config — re-export everything from constants for convenience."""
from cqg.config.constants import *  # noqa: F401,F403
