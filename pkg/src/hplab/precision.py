"""Working-precision control for the arbitrary-precision kernels."""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import mpmath


@dataclass(frozen=True)
class PrecisionContext:
    """Carrier of the binary working precision.

    Every numeric kernel takes a context and runs its mpmath arithmetic
    with at least ``mantissa_bits`` bits of mantissa; individual
    algorithms may add guard bits internally where an identity or a
    linear solve demands them.  Results are deterministic for a fixed
    context and fixed inputs.
    """

    mantissa_bits: int = 256

    def __post_init__(self):
        if self.mantissa_bits < 16:
            raise ValueError("mantissa_bits must be at least 16")

    @contextmanager
    def workprec(self, extra: int = 0):
        """mpmath working-precision block at ``mantissa_bits + extra`` bits."""
        with mpmath.workprec(self.mantissa_bits + extra):
            yield mpmath.mp

    def mpf(self, x) -> mpmath.mpf:
        with self.workprec():
            return mpmath.mpf(x)

    def mpc(self, x, y=0) -> mpmath.mpc:
        with self.workprec():
            return mpmath.mpc(x, y)

    def to_number(self, z):
        """Coerce ``z`` to an mpf/mpc at this precision, keeping it real if it is."""
        with self.workprec():
            if isinstance(z, mpmath.mpc) or (isinstance(z, complex) and z.imag != 0):
                return mpmath.mpc(z)
            if isinstance(z, complex):
                return mpmath.mpf(z.real)
            return mpmath.mpf(z)

    def eps(self, slack_bits: int = 0) -> mpmath.mpf:
        """2^-(mantissa_bits - slack_bits), the natural tolerance scale."""
        with self.workprec():
            return mpmath.mpf(2) ** (-(self.mantissa_bits - slack_bits))


DEFAULT_CTX = PrecisionContext()
