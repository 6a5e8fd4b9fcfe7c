# SPDX-License-Identifier: Apache-2.0
"""Splitting receiver (joint coherent + power detection) toolkit."""

from ._splitrx import *  # noqa: F401,F403
from ._splitrx import __doc__  # noqa: F401

__version__ = "0.1.0"
