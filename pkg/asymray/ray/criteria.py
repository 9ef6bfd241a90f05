"""
The individual criteria for a graph to be an asymptotic ray, evaluated on a
truncation: the degree bound, the cover radius of an arrow, the uniform
radius of the spheres around the base point, the layer-by-layer numbering
and the segment cover read back from a numbering.

Per-layer values are computed once; the validity margin only decides which
layers are reported. With ``margin="auto"`` the margin is chased: start at 1
(0 for convex truncations) and raise it to (largest value found) + 1 until
the reported values are certified.
"""

import logging
from collections import namedtuple

import numpy as np

from ..ballean.bounded import BoundedFamilyCertificate, bounded_at_scale, family_radius
from ..consistency import ensure
from ..graph.truncation import ContractError, MarginError
from ..morphisms.vertex_map import VertexMap

logger = logging.getLogger(__name__)

AUTO = "auto"

#: Result of one criterion: ``per_layer[n]`` is the value on layer n for the
#: reported layers 0..len(per_layer)-1, ``value`` their maximum, ``bounded``
#: the verdict of :func:`~asymray.ballean.bounded.bounded_at_scale` (always
#: True on finite graphs), ``exact`` whether every value is certified, and
#: ``witnesses`` the criterion-specific assignment (nearest arrow index per
#: vertex, or a centre per layer).
CriterionResult = namedtuple("CriterionResult",
                             ["value", "per_layer", "bounded", "margin", "exact", "witnesses"])

#: Numbering read back as a cover: every window of k + 1 consecutive numbers
#: contains the number of an arrow vertex (``longest_run`` is the longest
#: stretch of numbers without one), and preimages of numbers at most k apart
#: are at most ``r_prime`` apart.
SegmentCover = namedtuple("SegmentCover", ["k", "r_prime", "longest_run"])


def degree_bound(k):
    """Maximum degree of a graph admitting an asymorphism onto the ray with
    edge constant k: the neighbours of u land injectively in B(f(u), k)
    minus f(u)."""
    if k < 1:
        raise ValueError("edge constant must be at least 1")
    return 2 * k


def _initial_margin(t, margin):
    if margin == AUTO:
        return 0 if t.convex or t.complete else 1
    if not 0 <= margin < max(t.depth, 1):
        raise ValueError("margin must lie in 0..depth-1, got {}".format(margin))
    return margin


def _last_layer(t, margin):
    return t.certified_layers(margin)[-1]


def _chase(t, margin, largest):
    """Smallest auto margin m with largest(m) + 1 <= m, or the explicit margin.

    ``largest(m)`` is the largest value on the layers reported with margin m.
    """
    m = _initial_margin(t, margin)
    if margin != AUTO or t.convex:
        return m, True
    while True:
        value = largest(m)
        if value + 1 <= m:
            return m, True
        m = value + 1
        logger.debug("margin raised to %d", m)
        if t.depth - m < 1:
            logger.warning("validity margin exhausted at depth %d; values are prefix-only",
                           t.depth)
            return max(t.depth - 1, 0), False


def arrow_distances(t, arrow):
    """Explored distances from each arrow vertex (rows) to every vertex
    (columns in :attr:`~asymray.graph.truncation.Truncation.vertices` order)"""
    return np.asarray(t.distance_matrix(list(arrow)))


def cover_radius(t, arrow, margin=AUTO, distances=None):
    """Least r with every reported vertex within r of the arrow.

    Each vertex is assigned to its nearest arrow vertex, the least index on
    ties; ``per_layer[n]`` is the largest such distance in layer n.
    """
    if distances is None:
        distances = arrow_distances(t, arrow)
    nearest = distances.argmin(axis=0)
    reach = distances[nearest, np.arange(distances.shape[1])].astype(int)
    per_layer_all = [0] * len(t.layers)
    for v, i in t.index.items():
        n = t.layer_of(v)
        per_layer_all[n] = max(per_layer_all[n], int(reach[i]))

    def largest(m):
        return max(per_layer_all[:_last_layer(t, m) + 1])

    m, exact = _chase(t, margin, largest)
    last = _last_layer(t, m)
    per_layer = per_layer_all[:last + 1]
    if not t.convex:
        exact = exact and all(c <= t.depth - n for n, c in enumerate(per_layer))
    assignment = {v: int(nearest[t.index[v]]) for v in t.certified_vertices(m)}
    bounded = t.finite or bounded_at_scale(per_layer)
    logger.info("cover radius %d on layers 0..%d (margin %d, bounded=%s)", max(per_layer), last,
                m, bounded)
    return CriterionResult(max(per_layer), per_layer, bounded, m, exact, assignment)


def sphere_uniform_radius(t, base=None, margin=AUTO):
    """Least common radius of the spheres S(base, n) over the reported layers.

    ``base`` must be the root of the truncation. The family is handed to
    :func:`~asymray.ballean.bounded.family_radius`; the chase uses uncertified
    radii, so the final call only ever sees certified ones.
    """
    if base is not None and base != t.root:
        raise ContractError("spheres are taken around the root {}, not {}".format(t.root, base))
    cache = {}

    def radius(n):
        if n not in cache:
            cache[n] = t.member_radius(t.layers[n], strict=False)
        return cache[n]

    def largest(m):
        return max(radius(n)[0] for n in range(_last_layer(t, m) + 1))

    m, exact = _chase(t, margin, largest)
    last = _last_layer(t, m)
    family = [t.layers[n] for n in range(last + 1)]
    if exact:
        result = family_radius(t, family)
        per_layer, centers = list(result.radii), list(result.centers)
    else:
        per_layer = [radius(n)[0] for n in range(last + 1)]
        centers = [radius(n)[1] for n in range(last + 1)]
    bounded = t.finite or bounded_at_scale(per_layer)
    if exact:
        ensure(bounded == isinstance(result, BoundedFamilyCertificate),
               "family radius and per-layer radii disagree on boundedness")
    logger.info("sphere radius %d on layers 0..%d (margin %d, bounded=%s)", max(per_layer),
                last, m, bounded)
    return CriterionResult(max(per_layer), per_layer, bounded, m, exact, centers)


def layer_offsets(t, last):
    """First number given to each layer 0..last+1 by :func:`construct_numbering`"""
    offsets = [0]
    for n in range(last + 1):
        offsets.append(offsets[-1] + len(t.layers[n]))
    return offsets


def construct_numbering(t, last=None):
    """Number the vertices of layers 0..last consecutively: the root gets 0,
    then each layer in ascending vertex-id order.

    :returns: :class:`~asymray.morphisms.vertex_map.VertexMap` onto
        {0, ..., count - 1}
    """
    if last is None:
        last = t.radius
    forward = {}
    for n in range(last + 1):
        for v in t.layers[n]:
            forward[v] = len(forward)
    return VertexMap(forward, codomain=range(len(forward)))


def segment_cover(numbering, t, arrow, forward_m):
    """Read a cover of the graph off a numbering with edge constant ``forward_m``.

    With k = max(forward_m, least number of an arrow vertex), every window
    [i, i + k] of numbers must contain the number of an arrow vertex; then
    every vertex lies within r_prime of the arrow, where r_prime bounds the
    distance between preimages of numbers at most k apart.
    """
    marks = sorted(numbering(a) for a in arrow if a in numbering.forward)
    count = len(numbering)
    k = max(forward_m, marks[0])
    longest_run = max([marks[0]] + [b - a - 1 for a, b in zip(marks, marks[1:])] +
                      [count - 1 - marks[-1]])
    if longest_run > k:
        raise MarginError("a window of {} numbers holds no arrow vertex".format(k + 1))
    preimage = numbering.inverse()
    pairs = [(preimage(i), preimage(j)) for i in range(count)
             for j in range(i + 1, min(i + k, count - 1) + 1)]
    r_prime = 0
    for (u, v), value in zip(pairs, t.pair_distances(pairs)):
        if not t.is_exact_distance(u, v, int(value)):
            raise MarginError("distance between {} and {} is not certified".format(u, v))
        r_prime = max(r_prime, int(value))
    logger.debug("segment cover: k=%d, r'=%d", k, r_prime)
    return SegmentCover(k, r_prime, longest_run)
