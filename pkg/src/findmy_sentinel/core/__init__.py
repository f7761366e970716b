"""Core building blocks - exceptions."""
