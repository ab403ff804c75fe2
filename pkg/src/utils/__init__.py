# Utils Package
"""Observability and sparse-triplet formatting for qkv."""
