"""Pydantic models for domain objects, scenarios and API payloads."""
