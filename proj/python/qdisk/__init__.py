"""Integral means spectra, quasidisk regions and twisting estimates."""

from ._qdisk import *  # noqa: F401,F403
from ._qdisk import QdiskError, __version__  # noqa: F401
