"""Tracker detection engines."""
