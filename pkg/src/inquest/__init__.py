"""Seedable text-world engine with question answering and agent evaluation."""

__version__ = "0.1.0"
