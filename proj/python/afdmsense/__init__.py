"""AFDM/OFDM/OCDM ambiguity-function analysis and delay-Doppler sensing."""

try:
    from ._afdmsense import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _afdmsense import *  # noqa: F401,F403  (module on PYTHONPATH from a CMake build)
