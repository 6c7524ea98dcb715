"""Exact symbolic engine for twisted corepresentations of FRT-type bialgebras.

Everything is computed over QQ(parameters) with no numerics: braid/Yang-Baxter
checks, twisting-tensor validity, quantum matrix relation ideals, cocycle
twists, rewriting and PBW diagnostics, and spectral-parameter trace identities.
"""

__version__ = "0.1.0"
