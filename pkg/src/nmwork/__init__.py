"""Extractable work of Landauer erasure under non-Markovian qubit noise."""

__version__ = "0.1.0"
