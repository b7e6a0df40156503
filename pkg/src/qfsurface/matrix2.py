"""Flat 2x2 matrix helpers over mpmath scalars.

Matrices are (a, b, c, d) tuples.  Used by the holonomy assembly and the
cocycle pipeline, where intermediate products cancel catastrophically and
fixed precision is not enough.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np

FEYE = (1, 0, 0, 1)
FZERO = (0, 0, 0, 0)
FS = (0, 1, -1, 0)


def fmul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


def fadd(x, y):
    return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])


def fscale(x, s):
    return (s * x[0], s * x[1], s * x[2], s * x[3])


def fdet(x):
    return x[0] * x[3] - x[1] * x[2]


def fadj(x):
    return (x[3], -x[1], -x[2], x[0])


def finv(x):
    d = fdet(x)
    return (x[3] / d, -x[1] / d, -x[2] / d, x[0] / d)


def frenorm(x):
    s = mp.sqrt(fdet(x))
    return (x[0] / s, x[1] / s, x[2] / s, x[3] / s)


def ftrace(x):
    return x[0] + x[3]


def ftraceless(x):
    half = (x[0] + x[3]) / 2
    return (x[0] - half, x[1], x[2], x[3] - half)


def ftwist(tau):
    half = mp.exp(tau / 2)
    return (half, 0, 0, 1 / half)


def fconj(p, x):
    """p x p^(-1) for unit-determinant p."""
    return fmul(fmul(p, x), fadj(p))


def longdouble_of(x):
    hi = float(x)
    lo = float(x - mp.mpf(hi))
    return np.longdouble(hi) + np.longdouble(lo)


def flat_to_clongdouble(flat):
    out = np.empty((2, 2), dtype=np.clongdouble)
    for k, z in enumerate(flat):
        z = mp.mpc(z)
        out[k // 2, k % 2] = np.clongdouble(longdouble_of(z.real)) \
            + np.clongdouble(1j) * np.clongdouble(longdouble_of(z.imag))
    return out


def flat_to_complex(flat):
    return np.array(
        [[complex(flat[0]), complex(flat[1])], [complex(flat[2]), complex(flat[3])]],
        dtype=complex,
    )


def flat_from_array(m):
    m = np.asarray(m)
    return (mp.mpc(complex(m[0, 0])), mp.mpc(complex(m[0, 1])),
            mp.mpc(complex(m[1, 0])), mp.mpc(complex(m[1, 1])))


def fmax_abs(flat):
    return max(abs(complex(v)) for v in flat)
