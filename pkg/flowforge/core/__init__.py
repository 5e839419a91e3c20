"""Core configuration, logging, errors and randomness."""
