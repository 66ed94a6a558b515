"""Seeded agent-based simulation of recommender setups on a synthetic social network."""

__version__ = "0.1.0"
