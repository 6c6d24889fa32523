"""Verification toolkit for the even derangement graph and its tensor powers."""

from __future__ import annotations

from .const import VERSION

__version__ = VERSION
