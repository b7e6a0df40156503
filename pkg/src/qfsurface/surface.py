"""Holonomy representations from complex Fenchel-Nielsen coordinates.

Given a pants decomposition graph and one (length, twist) pair of complex
numbers per decomposition curve, builds a representation of the standard
surface-group presentation into SL2(C) such that every decomposition curve
has complex length equal to its coordinate.

Assembly scheme: each pants is realized in the fixed normal form of
:mod:`qfsurface.pants` with half-lengths l/2 on its cuffs, then conjugated
into place walking a spanning tree of the graph.  Gluing across a curve
aligns the cuff frames of the two sides through

    F_parent @ twist(tau) @ S @ F_child^(-1),

where twist(tau) = diag(exp(tau/2), exp(-tau/2)) translates by tau along
the glued axis and S = [[0, 1], [-1, 0]] reverses the axis orientation, so
the two cuff holonomies are exact inverses.  Edges outside the tree get a
stable-letter matrix built from the same frame data.  All entries are
entire functions of the coordinates: finite-difference stencils in l or tau
never cross a branch cut.

The zero-twist origin is the frame alignment itself; it is a convention,
and only twist differences are meaningful.
"""

from __future__ import annotations

import cmath
import math

import mpmath as mp
import numpy as np

from . import matrix2 as m2

from .moebius import (
    MoebiusMap,
    NotLoxodromic,
    classify,
    complex_displacement,
    displacement_from_trace,
    fixed_points,
    normalize_complex_length,
)
from .pants import ReduciblePants, frame_entries, pants_entries, validate_pants
from .presentation import PantsDecompositionGraph, build_presentation
from .words import cyclic_reduce, reduce_word

__all__ = [
    "DegenerateFN",
    "BranchFailure",
    "UnknownGenerator",
    "FNCoordinates",
    "Representation",
    "holonomy",
    "twist_flow",
    "evaluate_word",
    "complex_length_of_curve",
    "fuchsian_residual",
]

# Keep lengths away from the Im = +-pi seam, where the normalized complex
# length no longer recovers the input coordinate.
_IM_LENGTH_MARGIN = 1e-2

_S = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


class DegenerateFN(Exception):
    """Coordinates outside the admissible region (pants degenerate)."""


class BranchFailure(Exception):
    """Length coordinate too close to the Im = +-pi seam."""


class UnknownGenerator(Exception):
    """A word refers to a generator the presentation does not have."""


class FNCoordinates:
    """Complex length/twist pairs, ordered like graph.curve_labels."""

    __slots__ = ("lengths", "twists")

    def __init__(self, lengths, twists):
        self.lengths = tuple(complex(v) for v in lengths)
        self.twists = tuple(complex(v) for v in twists)
        if len(self.lengths) != len(self.twists):
            raise ValueError("lengths and twists must have equal length")
        for l in self.lengths:
            if l.real <= 0.0:
                raise DegenerateFN(f"length {l} has nonpositive real part")

    @classmethod
    def from_mapping(cls, graph, table):
        lengths, twists = [], []
        for label in graph.curve_labels:
            l, tau = table[label]
            lengths.append(l)
            twists.append(tau)
        return cls(lengths, twists)

    def __len__(self):
        return len(self.lengths)

    def replace(self, index, length=None, twist=None):
        lengths = list(self.lengths)
        twists = list(self.twists)
        if length is not None:
            lengths[index] = length
        if twist is not None:
            twists[index] = twist
        return FNCoordinates(lengths, twists)

    def shifted(self, index, kind, delta):
        """Coordinates with fn[kind][index] += delta; kind is 'l' or 'tau'."""
        if kind == "l":
            return self.replace(index, length=self.lengths[index] + delta)
        if kind == "tau":
            return self.replace(index, twist=self.twists[index] + delta)
        raise ValueError(f"unknown coordinate kind {kind!r}")


def twist_flow(fn, index, t):
    """Add t to the twist of the given curve index."""
    return fn.shifted(index, "tau", t)


def _det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def _adj2(m):
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=m.dtype)


def _inv2(m):
    """Inverse of a unit-determinant matrix (adjugate)."""
    return _adj2(m)


# The assembly runs in arbitrary precision: holonomy entries grow like
# exp(length x tree depth) and the intermediate products inside generator
# words cancel catastrophically, so fixed precision loses many digits.
ASSEMBLY_DPS = 34


class Representation:
    """Images of the standard generators, evaluable on words.

    Matrices are held in extended precision (clongdouble) for the analysis
    methods, which hand out ordinary complex128 MoebiusMaps.  The
    arbitrary-precision images from the assembly are kept alongside (as
    flat (a, b, c, d) tuples of mpmath numbers) for the tangent-cocycle
    pipeline, whose intermediate quantities cancel catastrophically.
    """

    def __init__(self, graph, presentation, fn, images, mp_images=None):
        self.graph = graph
        self.presentation = presentation
        self.fn = fn
        self.images = {
            gen: np.asarray(m, dtype=np.clongdouble) for gen, m in images.items()
        }
        self._inverses = {gen: _inv2(m) for gen, m in self.images.items()}
        if mp_images is None:
            # downgraded path (e.g. conjugated representations): seed the
            # arbitrary-precision table from the stored matrices
            mp_images = {
                gen: m2.flat_from_array(m.astype(complex))
                for gen, m in self.images.items()
            }
        self.mp_images = mp_images
        self.mp_inverses = {gen: m2.fadj(m) for gen, m in mp_images.items()}

    def generator_flat(self, letter):
        """Arbitrary-precision image of a single signed generator letter."""
        table = self.mp_images if letter > 0 else self.mp_inverses
        gen = abs(letter)
        if gen not in table:
            raise UnknownGenerator(f"generator id {gen}")
        return table[gen]

    def generator_matrix(self, letter):
        table = self.images if letter > 0 else self._inverses
        gen = abs(letter)
        if gen not in table:
            raise UnknownGenerator(f"generator id {gen}")
        return table[gen]

    def matrix_of_word(self, word):
        out = np.eye(2, dtype=np.clongdouble)
        for letter in word:
            out = out @ self.generator_matrix(letter)
        return out

    def evaluate(self, word):
        if isinstance(word, str):
            word = self.presentation.word_from_string(word)
        word = reduce_word(word)
        return MoebiusMap(self.matrix_of_word(word).astype(complex), normalize=False)

    def relator_residual(self):
        m = self.matrix_of_word(self.presentation.relator)
        return float(np.max(np.abs(m - np.eye(2))))

    def curve_word(self, label):
        try:
            return self.presentation.marking[label]
        except KeyError:
            raise UnknownGenerator(f"no decomposition curve {label!r}") from None

    def conjugated(self, mapping):
        """The representation g -> M g M^-1 (same marked structure)."""
        m = mapping.m if isinstance(mapping, MoebiusMap) else np.asarray(mapping)
        m = m.astype(np.clongdouble)
        minv = _adj2(m) / _det2(m)
        images = {gen: m @ mat @ minv for gen, mat in self.images.items()}
        return Representation(self.graph, self.presentation, self.fn, images)


def holonomy(graph, fn):
    """Representation realizing the coordinates on the graph's curves."""
    if len(fn) != graph.num_curves:
        raise DegenerateFN(
            f"{len(fn)} coordinate pairs for {graph.num_curves} curves"
        )
    for l in fn.lengths:
        if abs(l.imag) >= math.pi - _IM_LENGTH_MARGIN:
            raise BranchFailure(
                f"Im(length) = {l.imag} too close to the +-pi seam"
            )
    plan = graph.plan()
    label_index = {label: k for k, label in enumerate(graph.curve_labels)}
    cuff_curve = {}
    for edge in graph.edges:
        for end in edge.ends():
            cuff_curve[end] = edge.label

    def half_length(end):
        return fn.lengths[label_index[cuff_curve[end]]] / 2.0

    # Assemble in arbitrary precision, round the generator images to
    # extended precision at the end.  Holonomy entries and the cancellation
    # inside word products grow exponentially with lengths and tree depth;
    # the working precision keeps relator and round-trip residuals at the
    # representation floor across the desk-scale coordinate boxes.
    with mp.workdps(ASSEMBLY_DPS):
        matrices = {}
        frames = {}
        for v in range(graph.num_pants):
            sigmas = tuple(half_length((v, c)) for c in (0, 1, 2))
            try:
                validate_pants(sigmas)
            except (ReduciblePants, ValueError) as exc:
                raise DegenerateFN(str(exc)) from exc
            sigmas_mp = tuple(mp.mpc(s) for s in sigmas)
            matrices[v] = pants_entries(sigmas_mp, mp.cosh, mp.exp)
            frames[v] = frame_entries(sigmas_mp, mp.cosh, mp.exp)

        def gluing_map(label, from_end, to_end):
            # Frame determinants on both sides equal -2 sinh(length/2) of
            # the same curve, so this product has unit determinant by
            # construction; renormalization only polishes roundoff.
            tau = mp.mpc(fn.twists[label_index[label]])
            v, i = from_end
            w, j = to_end
            gluing = m2.fmul(
                m2.fmul(m2.fmul(frames[v][i], m2.ftwist(tau)), m2.FS),
                m2.finv(frames[w][j]),
            )
            return m2.frenorm(gluing)

        conj = {plan.root: m2.FEYE}
        for label, parent_end, child_end in plan.tree_gluings:
            conj[child_end[0]] = m2.fmul(
                conj[parent_end[0]], gluing_map(label, parent_end, child_end)
            )

        symbol_matrix = {}
        for v in range(graph.num_pants):
            m = conj[v]
            minv = m2.fadj(m)
            symbol_matrix[graph.symbol_a(v)] = m2.fmul(m2.fmul(m, matrices[v][0]), minv)
            symbol_matrix[graph.symbol_b(v)] = m2.fmul(m2.fmul(m, matrices[v][1]), minv)

        for label, s_end, t_end, z_symbol in plan.nontree_gluings:
            v, w = s_end[0], t_end[0]
            forward = m2.fmul(
                m2.fmul(conj[v], gluing_map(label, s_end, t_end)), m2.fadj(conj[w])
            )
            symbol_matrix[z_symbol] = m2.fadj(forward)

        def eval_symbols(word):
            out = m2.FEYE
            for letter in word:
                m = symbol_matrix[abs(letter)]
                out = m2.fmul(out, m if letter > 0 else m2.fadj(m))
            return out

        mp_images = {
            gen: eval_symbols(word)
            for gen, word in plan.presentation.generator_assembly_words.items()
        }
        images = {gen: m2.flat_to_clongdouble(m) for gen, m in mp_images.items()}
    return Representation(graph, plan.presentation, fn, images, mp_images)


def evaluate_word(rep, word):
    """Image of a word (empty word maps to the identity)."""
    return rep.evaluate(word)


def complex_length_of_curve(rep, word):
    """Complex displacement of the word's holonomy, normalized.

    The length of a curve only depends on its free-homotopy class, so the
    word is cyclically reduced first; the trace is then taken in extended
    precision before the arccosh.
    """
    if isinstance(word, str):
        word = rep.presentation.word_from_string(word)
    matrix = rep.matrix_of_word(cyclic_reduce(word))
    mapping = MoebiusMap(matrix.astype(complex), normalize=False)
    kind = classify(mapping)
    if kind in ("identity", "parabolic"):
        raise NotLoxodromic(f"holonomy of the word is {kind}")
    return displacement_from_trace(complex(matrix[0, 0] + matrix[1, 1]))


def fuchsian_residual(rep):
    """Deviation from being a real representation, in a fixed normal form.

    Conjugates so that the first marking curve's axis is (0, infinity) and a
    fixed auxiliary fixed point is at 1, then reports the largest imaginary
    part over the generator matrix entries.  Zero (to roundoff) iff the
    representation is conjugate to one into SL2(R) in this frame.
    """
    labels = sorted(rep.presentation.marking)
    axis = fixed_points(rep.evaluate(rep.presentation.marking[labels[0]]))
    third = None
    for label in labels[1:]:
        try:
            candidate = fixed_points(rep.evaluate(rep.presentation.marking[label]))
        except NotLoxodromic:
            continue
        for point in (candidate.attracting, candidate.repelling):
            if (
                point.chordal_distance(axis.repelling) > 1e-6
                and point.chordal_distance(axis.attracting) > 1e-6
            ):
                third = point
                break
        if third is not None:
            break
    if third is None:
        raise DegenerateFN("no independent fixed point to pin a frame")
    frame = MoebiusMap.from_three_points(axis.repelling, axis.attracting, third)
    normalized = rep.conjugated(frame.inverse())
    residual = 0.0
    for mat in normalized.images.values():
        residual = max(residual, float(np.max(np.abs(mat.astype(complex).imag))))
    return residual
