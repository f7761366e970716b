"""Test suite for OpenCode Debug Relay Server."""
