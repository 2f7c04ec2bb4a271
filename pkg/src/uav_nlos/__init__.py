"""Excess path loss for low-altitude UAV links behind a single knife-edge obstacle."""

__version__ = "0.1.0"
