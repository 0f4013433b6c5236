"""Energy-aware traffic shaping for a two-tier cellular network.

Thin python surface over the compiled core: closed-form bandwidth and power
accounting, the activation optimizer, and seeded Monte Carlo / event
simulation oracles.
"""

from ._shaper import *  # noqa: F401,F403
from ._shaper import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
