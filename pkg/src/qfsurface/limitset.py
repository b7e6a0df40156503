"""Limit-set point clouds from breadth-first word enumeration.

Enumerates freely reduced words up to a given length, keeps the attracting
fixed point of every loxodromic image, and deduplicates projectively.  The
point at infinity is a legitimate member of the cloud (the representations
built here usually have a cuff axis through infinity); flat-file emission
drops non-finite points.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .moebius import ProjectivePoint
from .words import reduced_words_up_to

__all__ = ["LimitSetCloud", "limit_set", "cloud_to_csv", "cloud_to_svg",
           "cross_ratio_imag_spread"]

_DEDUP_TOL = 1e-10
_TRACE_TOL = 1e-9


def _sphere_vector(point):
    """Chordal embedding of the projective line as the unit sphere."""
    z, w = point.z, point.w
    norm = abs(z) ** 2 + abs(w) ** 2
    cross = z * w.conjugate()
    return (
        2.0 * cross.real / norm,
        2.0 * cross.imag / norm,
        (abs(z) ** 2 - abs(w) ** 2) / norm,
    )


class _SphereHash:
    """Grid hash on the unit sphere for near-duplicate detection.

    The chordal distance between projective points equals half the
    Euclidean distance between their sphere vectors, so a tolerance ball
    maps to a bounded set of grid cells.
    """

    def __init__(self, tol):
        self.tol = tol
        self.cell = 4.0 * tol
        self.buckets = {}

    def _key(self, vec):
        return tuple(int(math.floor(x / self.cell)) for x in vec)

    def _near(self, vec, tol):
        kx, ky, kz = self._key(vec)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for dz in (-1, 0, 1):
                    for other in self.buckets.get((kx + dx, ky + dy, kz + dz), ()):
                        dist = math.sqrt(
                            (vec[0] - other[0]) ** 2
                            + (vec[1] - other[1]) ** 2
                            + (vec[2] - other[2]) ** 2
                        )
                        if dist <= 2.0 * tol:
                            return True
        return False

    def add_if_new(self, point):
        vec = _sphere_vector(point)
        if self._near(vec, self.tol):
            return False
        self.buckets.setdefault(self._key(vec), []).append(vec)
        return True

    def contains(self, point, tol):
        return self._near(_sphere_vector(point), tol)


class LimitSetCloud:
    """Deduplicated attracting fixed points with generating word lengths."""

    def __init__(self, points, depth, index=None):
        self.points = points          # list of (ProjectivePoint, word_length)
        self.depth = depth
        self._index = index
        self._query_hash = None

    def __len__(self):
        return len(self.points)

    def finite_points(self):
        """(complex, word_length) pairs, skipping the point at infinity."""
        out = []
        for point, length in self.points:
            if not point.is_infinity:
                out.append((point.as_complex(), length))
        return out

    def contains(self, point, tol=1e-8):
        """Membership up to chordal distance tol."""
        if self._query_hash is None or self._query_hash.tol != tol:
            query = _SphereHash(tol)
            for p, _ in self.points:
                query.add_if_new(p)
            self._query_hash = query
        return self._query_hash.contains(point, tol)


def _attracting_fixed_point(matrix):
    """Attracting fixed point of a loxodromic SL2 matrix, or None."""
    a, b = matrix[0, 0], matrix[0, 1]
    c, d = matrix[1, 0], matrix[1, 1]
    tr = a + d
    # skip identity-like and parabolic/elliptic-like words quickly
    if abs(tr.imag) <= _TRACE_TOL and abs(tr.real) <= 2.0 + _TRACE_TOL:
        return None
    disc = cmath.sqrt(tr * tr - 4.0)
    lam = (tr + disc) / 2.0
    if abs(lam) < 1.0:
        lam = (tr - disc) / 2.0
    if abs(abs(lam) - 1.0) <= 1e-12:
        return None
    if abs(c) > 1e-14:
        return ProjectivePoint(lam - d, c)
    # c = 0: fixed points are infinity (eigenvalue a) and b/(d - a)
    if abs(lam - a) <= abs(lam - d):
        return ProjectivePoint.infinity()
    return ProjectivePoint(b, d - a)


def limit_set(rep, depth):
    """Attracting fixed points of all loxodromic words up to the depth."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    num_gens = rep.presentation.num_generators
    gen_matrices = {}
    for g in range(1, num_gens + 1):
        matrix = rep.images[g].astype(complex)
        gen_matrices[g] = matrix
        gen_matrices[-g] = np.array(
            [[matrix[1, 1], -matrix[0, 1]], [-matrix[1, 0], matrix[0, 0]]]
        )

    matrices = {(): np.eye(2, dtype=complex)}
    points = []
    index = _SphereHash(_DEDUP_TOL)
    for word in reduced_words_up_to(num_gens, depth):
        prefix = word[:-1]
        matrix = matrices[prefix] @ gen_matrices[word[-1]]
        if len(word) < depth:
            matrices[word] = matrix
        point = _attracting_fixed_point(matrix)
        if point is None:
            continue
        if index.add_if_new(point):
            points.append((point, len(word)))
    return LimitSetCloud(points, depth, index)


def projective_cross_ratio(p1, p2, p3, p4):
    """Cross ratio of four projective points via 2x2 determinants."""
    def det(u, v):
        return u.z * v.w - v.z * u.w

    num = det(p1, p3) * det(p2, p4)
    den = det(p1, p4) * det(p2, p3)
    if abs(den) < 1e-30:
        raise ZeroDivisionError("degenerate cross ratio")
    return num / den


def cross_ratio_imag_spread(cloud, trials, rng):
    """Largest |Im| of the cross ratio over random 4-tuples of cloud points.

    Zero (to numerics) iff the sampled points lie on a circle in the
    projective line, the Fuchsian signature.
    """
    points = [p for p, _ in cloud.points]
    if len(points) < 4:
        raise ValueError("need at least four points")
    worst = 0.0
    for _ in range(trials):
        idx = rng.choice(len(points), size=4, replace=False)
        try:
            value = projective_cross_ratio(*(points[i] for i in idx))
        except ZeroDivisionError:
            continue
        worst = max(worst, abs(value.imag))
    return worst


def cloud_to_csv(cloud):
    """CSV with columns re,im,word_length (finite points only)."""
    lines = ["re,im,word_length"]
    for z, length in cloud.finite_points():
        lines.append(f"{z.real:.17g},{z.imag:.17g},{length}")
    return "\n".join(lines) + "\n"


def cloud_to_svg(cloud, width=800):
    """Scatter plot of the finite cloud points as an SVG document."""
    finite = cloud.finite_points()
    if not finite:
        return '<svg xmlns="http://www.w3.org/2000/svg"/>\n'
    xs = [z.real for z, _ in finite]
    ys = [z.imag for z, _ in finite]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span_x = max(x1 - x0, 1e-9)
    span_y = max(y1 - y0, 1e-9)
    margin_x = 0.05 * span_x
    margin_y = 0.05 * span_y
    view = (x0 - margin_x, y0 - margin_y, span_x + 2 * margin_x, span_y + 2 * margin_y)
    radius = 0.5 * max(view[2], view[3]) / width
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'viewBox="{view[0]:.6g} {view[1]:.6g} {view[2]:.6g} {view[3]:.6g}">'
    ]
    for z, _length in finite:
        parts.append(
            f'<circle cx="{z.real:.9g}" cy="{z.imag:.9g}" r="{radius:.3g}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
