"""Numerical SL2(C) algebra: Moebius maps, projective points, oriented
geodesics, and the complex distance / complex displacement primitives.

Conventions used throughout the package:

* Matrices are kept as SL2(C) lifts (unit determinant).  Trace-based
  formulas resolve the projective sign ambiguity by flipping the trace so
  that its real part is nonnegative before taking arccosh.
* A "complex length" is a plain complex number with the real part a
  hyperbolic length and the imaginary part a rotation angle; values are
  reduced modulo 2*pi*i to the strip Im in (-pi, pi].
* Projective points are stored scaled so max(|z|, |w|) = 1, which keeps
  long word products away from overflow.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

__all__ = [
    "MoebiusError",
    "ParabolicOrIdentity",
    "NotLoxodromic",
    "SharedEndpoint",
    "DegenerateGeodesic",
    "MoebiusMap",
    "ProjectivePoint",
    "OrientedGeodesic",
    "normalize_complex_length",
    "compose",
    "classify",
    "complex_displacement",
    "displacement_from_trace",
    "fixed_points",
    "apply",
    "complex_distance",
    "half_turn",
]

_DET_TOL = 1e-12
_POINT_TOL = 1e-12
_CLASSIFY_TOL = 1e-9


class MoebiusError(Exception):
    """Base class for errors raised by this module."""


class ParabolicOrIdentity(MoebiusError):
    """Complex displacement requested for a map without one."""


class NotLoxodromic(MoebiusError):
    """Axis/fixed-point extraction requested for a non-loxodromic map."""


class SharedEndpoint(MoebiusError):
    """Two geodesics share an ideal endpoint; their distance degenerates."""


class DegenerateGeodesic(MoebiusError):
    """Endpoints too close to span a geodesic."""


def normalize_complex_length(value):
    """Reduce a complex length modulo 2*pi*i so that Im lies in (-pi, pi]."""
    value = complex(value)
    im = math.remainder(value.imag, 2.0 * math.pi)
    if im <= -math.pi:
        im += 2.0 * math.pi
    return complex(value.real, im)


class ProjectivePoint:
    """Point of the complex projective line as a homogeneous pair (z : w)."""

    __slots__ = ("z", "w")

    def __init__(self, z, w=1.0):
        z = complex(z)
        w = complex(w)
        scale = max(abs(z), abs(w))
        if scale == 0.0:
            raise ValueError("(0 : 0) is not a projective point")
        self.z = z / scale
        self.w = w / scale

    @classmethod
    def infinity(cls):
        return cls(1.0, 0.0)

    @property
    def is_infinity(self):
        return abs(self.w) <= _POINT_TOL

    def as_complex(self):
        """Affine coordinate z/w; raises for the point at infinity."""
        if self.is_infinity:
            raise ZeroDivisionError("point at infinity has no affine coordinate")
        return self.z / self.w

    def chordal_distance(self, other):
        """Fubini-Study chordal distance; zero iff projectively equal."""
        num = abs(self.z * other.w - other.z * self.w)
        den = math.hypot(abs(self.z), abs(self.w)) * math.hypot(abs(other.z), abs(other.w))
        return num / den

    def close_to(self, other, tol=1e-10):
        return self.chordal_distance(other) <= tol

    def __repr__(self):
        return f"ProjectivePoint({self.z!r}, {self.w!r})"


class OrientedGeodesic:
    """Geodesic of H^3 oriented from its repelling to its attracting endpoint."""

    __slots__ = ("repelling", "attracting")

    def __init__(self, repelling, attracting):
        if not isinstance(repelling, ProjectivePoint):
            repelling = ProjectivePoint(repelling)
        if not isinstance(attracting, ProjectivePoint):
            attracting = ProjectivePoint(attracting)
        if repelling.chordal_distance(attracting) <= _POINT_TOL:
            raise DegenerateGeodesic("endpoints coincide")
        self.repelling = repelling
        self.attracting = attracting

    def reversed(self):
        return OrientedGeodesic(self.attracting, self.repelling)

    def __repr__(self):
        return f"OrientedGeodesic({self.repelling!r}, {self.attracting!r})"


class MoebiusMap:
    """Unit-determinant 2x2 complex matrix acting on the projective line."""

    __slots__ = ("m",)

    def __init__(self, entries, normalize=True):
        m = np.asarray(entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError("expected a 2x2 matrix")
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) < 1e-30:
            raise ValueError("matrix is singular")
        if normalize:
            m = m / cmath.sqrt(det)
        self.m = m
        self.m.setflags(write=False)

    @classmethod
    def identity(cls):
        return cls(np.eye(2, dtype=complex), normalize=False)

    @classmethod
    def diagonal(cls, lam):
        lam = complex(lam)
        return cls([[lam, 0.0], [0.0, 1.0 / lam]], normalize=False)

    @classmethod
    def from_three_points(cls, p, q, r):
        """The map sending (0, infinity, 1) to (p, q, r)."""
        p = p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)
        q = q if isinstance(q, ProjectivePoint) else ProjectivePoint(q)
        r = r if isinstance(r, ProjectivePoint) else ProjectivePoint(r)
        # Columns q, p scaled so their sum lands on r.
        mat = np.array([[q.z, p.z], [q.w, p.w]], dtype=complex)
        rhs = np.array([r.z, r.w], dtype=complex)
        coef = np.linalg.solve(mat, rhs)
        cols = mat * coef[np.newaxis, :]
        return cls(cols)

    @property
    def a(self):
        return self.m[0, 0]

    @property
    def b(self):
        return self.m[0, 1]

    @property
    def c(self):
        return self.m[1, 0]

    @property
    def d(self):
        return self.m[1, 1]

    def det(self):
        return self.m[0, 0] * self.m[1, 1] - self.m[0, 1] * self.m[1, 0]

    def trace(self):
        return self.m[0, 0] + self.m[1, 1]

    def inverse(self):
        a, b, c, d = self.m[0, 0], self.m[0, 1], self.m[1, 0], self.m[1, 1]
        return MoebiusMap([[d, -b], [-c, a]], normalize=False)

    def __matmul__(self, other):
        return MoebiusMap(self.m @ other.m, normalize=True)

    def __call__(self, point):
        if isinstance(point, ProjectivePoint):
            return apply(self, point)
        return apply(self, ProjectivePoint(point)).as_complex()

    def distance_to_identity(self):
        """max-norm distance to the nearer of +I, -I."""
        eye = np.eye(2)
        return min(
            np.max(np.abs(self.m - eye)),
            np.max(np.abs(self.m + eye)),
        )

    def __repr__(self):
        return f"MoebiusMap({self.m.tolist()!r})"


def compose(first, second):
    """Matrix product first @ second, renormalized to unit determinant."""
    return first @ second


def apply(mapping, point):
    if not isinstance(point, ProjectivePoint):
        point = ProjectivePoint(point)
    vec = mapping.m @ np.array([point.z, point.w])
    return ProjectivePoint(vec[0], vec[1])


def classify(mapping, tol=_CLASSIFY_TOL):
    """One of 'identity', 'parabolic', 'elliptic', 'loxodromic'."""
    if mapping.distance_to_identity() <= tol:
        return "identity"
    tr = mapping.trace()
    if abs(tr * tr - 4.0) <= tol:
        return "parabolic"
    if abs(tr.imag) <= tol and abs(tr.real) < 2.0:
        return "elliptic"
    return "loxodromic"


def _lift_trace(tr):
    """Resolve the PSL2 sign: flip so Re(tr) >= 0, tie-broken by Im."""
    if tr.real < 0.0 or (tr.real == 0.0 and tr.imag < 0.0):
        return -tr
    return tr


def displacement_from_trace(trace):
    """Solve 2 cosh(phi/2) = +-tr for the normalized representative."""
    tr = _lift_trace(complex(trace))
    half = np.arccosh(tr / 2.0)
    return normalize_complex_length(2.0 * complex(half))


def complex_displacement(mapping, tol=_CLASSIFY_TOL):
    """Complex number phi with 2 cosh(phi/2) = tr, up to the lift sign.

    Re(phi) is the translation length, Im(phi) in (-pi, pi] the rotation
    angle.  Raises ParabolicOrIdentity when no displacement is defined.
    """
    kind = classify(mapping, tol)
    if kind in ("identity", "parabolic"):
        raise ParabolicOrIdentity(f"map is {kind}")
    return displacement_from_trace(mapping.trace())


def fixed_points(mapping, tol=_CLASSIFY_TOL):
    """Oriented axis of a loxodromic map, repelling then attracting point."""
    if classify(mapping, tol) != "loxodromic":
        raise NotLoxodromic("fixed points ordered by attraction need a loxodromic map")
    eigvals, eigvecs = np.linalg.eig(mapping.m)
    order = np.argsort(np.abs(eigvals))
    rep = ProjectivePoint(eigvecs[0, order[0]], eigvecs[1, order[0]])
    att = ProjectivePoint(eigvecs[0, order[1]], eigvecs[1, order[1]])
    return OrientedGeodesic(rep, att)


def half_turn(geodesic):
    """The involution (trace zero) fixing both endpoints of the geodesic."""
    p, q = geodesic.repelling, geodesic.attracting
    basis = np.array([[p.z, q.z], [p.w, q.w]], dtype=complex)
    j = np.diag([1j, -1j])
    det = basis[0, 0] * basis[1, 1] - basis[0, 1] * basis[1, 0]
    inv = np.array([[basis[1, 1], -basis[0, 1]], [-basis[1, 0], basis[0, 0]]]) / det
    return MoebiusMap(basis @ j @ inv, normalize=False)


def _endpoint_sets_match(g1, g2, tol=1e-12):
    """None, 'same', or 'reversed' according to endpoint identification."""
    if g1.repelling.close_to(g2.repelling, tol) and g1.attracting.close_to(g2.attracting, tol):
        return "same"
    if g1.repelling.close_to(g2.attracting, tol) and g1.attracting.close_to(g2.repelling, tol):
        return "reversed"
    return None


def complex_distance(g1, g2):
    """Complex distance between two oriented geodesics in H^3.

    After moving the common perpendicular to the axis (0, infinity) the two
    geodesics have symmetric endpoint pairs (u, -u) and (p, -p); the result
    is log(p/u) normalized so Re >= 0 and Im in (-pi, pi].
    """
    match = _endpoint_sets_match(g1, g2)
    if match == "same":
        return 0.0 + 0.0j
    if match == "reversed":
        return complex(0.0, math.pi)
    for e1 in (g1.repelling, g1.attracting):
        for e2 in (g2.repelling, g2.attracting):
            if e1.close_to(e2, _POINT_TOL):
                raise SharedEndpoint("geodesics share an ideal endpoint")

    # Axis of the composition of the two half-turns is the common
    # perpendicular; its translation is twice the sought distance.
    prod = half_turn(g2) @ half_turn(g1)
    eigvals, eigvecs = np.linalg.eig(prod.m)
    if abs(abs(eigvals[0]) - abs(eigvals[1])) > 1e-14 * max(1.0, abs(eigvals[0])):
        order = np.argsort(np.abs(eigvals))
    else:
        # Elliptic product (intersecting geodesics): any fixed order works,
        # the final normalization absorbs the orientation of the axis.
        key0 = (eigvals[0].real, eigvals[0].imag)
        key1 = (eigvals[1].real, eigvals[1].imag)
        order = np.array([0, 1]) if key0 <= key1 else np.array([1, 0])
    basis = eigvecs[:, order]
    det = basis[0, 0] * basis[1, 1] - basis[0, 1] * basis[1, 0]
    if abs(det) < 1e-14:
        raise SharedEndpoint("common perpendicular is degenerate")
    inv = np.array([[basis[1, 1], -basis[0, 1]], [-basis[1, 0], basis[0, 0]]]) / det

    def to_axis_frame(point):
        vec = inv @ np.array([point.z, point.w])
        pt = ProjectivePoint(vec[0], vec[1])
        if pt.is_infinity or abs(pt.z) <= _POINT_TOL:
            raise SharedEndpoint("geodesic endpoint falls on the perpendicular axis")
        return pt.as_complex()

    u = to_axis_frame(g1.attracting)
    p = to_axis_frame(g2.attracting)
    sigma = cmath.log(p / u)
    if sigma.real < 0.0 or (abs(sigma.real) <= 1e-13 and sigma.imag < 0.0):
        sigma = -sigma
    return normalize_complex_length(sigma)
