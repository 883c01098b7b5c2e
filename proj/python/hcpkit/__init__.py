"""Class polynomials, modular polynomials and support experiments."""

from ._hcpkit import *  # noqa: F401,F403
