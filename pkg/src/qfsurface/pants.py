"""Pair-of-pants representations with prescribed boundary traces.

For boundary data (sigma_1, sigma_2, sigma_3) with positive real parts,
builds the representation of <c1, c2, c3 | c1 c2 c3 = 1> into SL2(C) with
tr(C_i) = -2 cosh(sigma_i), in a fixed normal form:

    C1 = [[t1, -1], [1, 0]]            (companion matrix, t1 = -2 cosh s1)
    C2 = [[0, zeta], [-1/zeta, t2]]    (zeta = -exp(s3))
    C3 = (C1 C2)^(-1)

Every entry is an entire function of the sigma_i, so finite differences of
assembled holonomies never cross a branch cut.  Real boundary data gives
real matrices (a Fuchsian pair of pants).

The module also exposes the cuff frames used to glue pants together: for
cuff k, a basis matrix F_k whose columns are the attracting and repelling
eigenvectors of C_k, scaled so that det(F_k) = -2 sinh(sigma_k) and
F_k^(-1) C_k F_k = diag(-exp(sigma_k), -exp(-sigma_k)).  The scaling makes
the determinant depend only on the cuff's own length, so gluing maps
between frames of matching cuffs automatically have unit determinant.

The entry formulas are written against an abstract scalar backend so the
surface assembly can evaluate them in arbitrary precision; matrices are
handed around as flat (a, b, c, d) tuples there and packed into numpy
arrays only at the public boundary.
"""

from __future__ import annotations

import cmath

import numpy as np

from .moebius import MoebiusMap

__all__ = ["ReduciblePants", "PantsBoundaryData", "pants_representation",
           "pants_matrices", "cuff_frames", "pants_entries", "frame_entries"]

_SINH_TOL = 1e-12


class ReduciblePants(Exception):
    """The trace triple forces a reducible (degenerate) representation."""


class PantsBoundaryData:
    """Three complex half-lengths with positive real part."""

    __slots__ = ("sigmas",)

    def __init__(self, sigma1, sigma2, sigma3):
        sigmas = (complex(sigma1), complex(sigma2), complex(sigma3))
        for s in sigmas:
            if s.real <= 0.0:
                raise ValueError(f"boundary data needs Re > 0, got {s}")
            if abs(cmath.sinh(s)) <= _SINH_TOL:
                raise ValueError(f"degenerate boundary (sinh ~ 0) at {s}")
        self.sigmas = sigmas

    def __iter__(self):
        return iter(self.sigmas)


def _validate(sigmas):
    s1, s2, s3 = (complex(s) for s in sigmas)
    t1 = -2.0 * cmath.cosh(s1)
    t2 = -2.0 * cmath.cosh(s2)
    t3 = -2.0 * cmath.cosh(s3)
    commutator_trace = t1 * t1 + t2 * t2 + t3 * t3 - t1 * t2 * t3 - 2.0
    if abs(commutator_trace - 2.0) <= 1e-8:
        raise ReduciblePants(f"commutator trace {commutator_trace} is (near) 2")
    for s in (s1, s2, s3):
        if abs(cmath.sinh(s)) <= _SINH_TOL:
            raise ReduciblePants(f"degenerate boundary (sinh ~ 0) at {s}")


def pants_entries(sigmas, cosh, exp):
    """Boundary matrices as flat (a, b, c, d) tuples over a scalar backend."""
    s1, s2, s3 = sigmas
    t1 = -2 * cosh(s1)
    t2 = -2 * cosh(s2)
    zeta = -exp(s3)
    c1 = (t1, -1, 1, 0)
    c2 = (0, zeta, -1 / zeta, t2)
    c3 = (zeta, -(t1 * zeta - t2), 0, 1 / zeta)
    return c1, c2, c3


def frame_entries(sigmas, cosh, exp):
    """Cuff frames as flat tuples; columns = attracting, repelling vector."""
    s1, s2, s3 = sigmas
    t1 = -2 * cosh(s1)
    t2 = -2 * cosh(s2)
    zeta = -exp(s3)
    mu = -exp(s1)
    lam = -exp(s2)
    scale = exp(-s3 / 2)
    f1 = (mu, 1 / mu, 1, 1)
    f2 = (zeta * scale, zeta * scale, lam * scale, scale / lam)
    f3 = (1, t1 * zeta - t2, 0, zeta - 1 / zeta)
    return f1, f2, f3


def _pack(entries, dtype):
    a, b, c, d = entries
    return np.array([[a, b], [c, d]], dtype=dtype)


def _scalars(sigmas, dtype):
    return tuple(np.asarray(complex(s), dtype=dtype)[()] for s in sigmas)


def pants_matrices(sigmas, dtype=complex):
    """The three boundary matrices as 2x2 arrays of the given dtype."""
    _validate(sigmas)
    triple = pants_entries(_scalars(sigmas, dtype), np.cosh, np.exp)
    return tuple(_pack(m, dtype) for m in triple)


def cuff_frames(sigmas, dtype=complex):
    """Frame matrices (F1, F2, F3) as 2x2 arrays of the given dtype."""
    triple = frame_entries(_scalars(sigmas, dtype), np.cosh, np.exp)
    return tuple(_pack(m, dtype) for m in triple)


def pants_representation(data):
    """Boundary holonomies (C1, C2, C3) with C1 C2 C3 = I as MoebiusMaps."""
    if not isinstance(data, PantsBoundaryData):
        data = PantsBoundaryData(*data)
    c1, c2, c3 = pants_matrices(data.sigmas)
    return (
        MoebiusMap(c1, normalize=False),
        MoebiusMap(c2, normalize=False),
        MoebiusMap(c3, normalize=False),
    )


def validate_pants(sigmas):
    """Raise ReduciblePants for degenerate boundary triples."""
    _validate(sigmas)
