"""Balanced growth paths, rational-expectations dynamics, and
comparative-statics certification for a two-sector OLG economy with
collateralized credit, land speculation, and fiat money."""

from ._growthlab import *  # noqa: F401,F403
from ._growthlab import __version__  # noqa: F401
