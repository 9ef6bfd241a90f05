"""
Minimal Lipschitz constants of vertex maps and asymorphism checks.

For graph metrics a map sends every ball into a ball of a uniformly chosen
radius iff it is Lipschitz, and the least Lipschitz constant over all pairs
equals the largest image distance across a single edge. :func:`edge_lipschitz`
computes the latter on explored edges; :func:`global_lipschitz_oracle` is the
exhaustive all-pairs version used to cross-check it on small inputs.
"""

import logging
from collections import namedtuple

import numpy as np

from ..ballean.bounded import BoundedFamilyCertificate, bounded_at_scale, family_radius
from ..consistency import ensure
from ..graph.truncation import ContractError, MarginError
from .vertex_map import NotBijectiveError, VertexMap

logger = logging.getLogger(__name__)

#: Largest image distance across an edge of the domain (with the least edge
#: attaining it), and the all-pairs constant when it was computed.
LipschitzReport = namedtuple("LipschitzReport",
                             ["edge_constant", "witness_edge", "global_constant"])

#: Edge constants of a bijection and its inverse, with the per-layer largest
#: image distance in each direction (layers of the domain).
AsymorphismReport = namedtuple("AsymorphismReport", [
    "forward_m", "inverse_m", "is_asymorphism", "forward_witness", "inverse_witness",
    "forward_profile", "inverse_profile"
])

PushforwardReport = namedtuple("PushforwardReport", ["bounded", "source", "image"])

BoundedClassification = namedtuple("BoundedClassification", [
    "asymorphic", "sizes", "diameters", "witness", "forward_m", "inverse_m"
])

#: Largest vertex count accepted by the all-pairs oracle.
ORACLE_MAX_VERTICES = 200


class ScaleError(Exception):
    """Raised when an exhaustive check is asked to run on too large an input."""
    pass


def _edge_images(f, src, dst):
    """Explored edges of ``src`` inside the domain of ``f`` and the distance
    in ``dst`` between the images of each.

    Raises :class:`MarginError` if an image distance is not certified in
    ``dst``.
    """
    edges = [(u, v) for u, v in src.edges if u in f.forward and v in f.forward]
    images = [(f(u), f(v)) for u, v in edges]
    values = [int(d) for d in dst.pair_distances(images)]
    for (u, v), (x, y), d in zip(edges, images, values):
        if not dst.is_exact_distance(x, y, d):
            raise MarginError("distance between images {} and {} of edge ({}, {}) is only "
                              "an upper bound".format(x, y, u, v))
    return edges, values


def _largest(edges, values):
    best, witness = 0, edges[0] if edges else None
    for edge, value in zip(edges, values):
        if value > best:
            best, witness = value, edge
    return best, witness


def _layer_profile(edges, values, layer_of):
    """Largest image distance per layer; an edge counts towards the deeper of
    its endpoints"""
    profile = []
    for (u, v), value in zip(edges, values):
        n = max(layer_of(u), layer_of(v))
        if n >= len(profile):
            profile.extend([0] * (n + 1 - len(profile)))
        profile[n] = max(profile[n], value)
    return profile


def edge_lipschitz(f, src, dst):
    """Least m with f(B(v, 1)) inside B(f(v), m), over the explored edges of
    ``src`` whose endpoints are both in the domain of ``f``.

    Raises :class:`MarginError` if an image distance is not certified in
    ``dst``.
    """
    best, witness = _largest(*_edge_images(f, src, dst))
    logger.debug("edge constant %d, witness %s", best, witness)
    return LipschitzReport(best, witness, None)


def global_lipschitz_oracle(f, src, dst):
    """Least m with d2(f(u), f(v)) <= m d1(u, v) over all pairs.

    Both spaces must be complete and have at most
    :data:`ORACLE_MAX_VERTICES` vertices; ``f`` must be total on ``src``.
    """
    if not (src.complete and dst.complete):
        raise ContractError("the all-pairs oracle needs complete graphs")
    if max(len(src), len(dst)) > ORACLE_MAX_VERTICES:
        raise ScaleError("all-pairs oracle limited to {} vertices".format(ORACLE_MAX_VERTICES))
    vertices = list(src.vertices)
    if len(vertices) < 2:
        return 0
    index = {v: i for i, v in enumerate(dst.vertices)}
    images = [index[f(v)] for v in vertices]
    d1 = np.asarray(src.distance_matrix(), dtype=float)
    d2 = np.asarray(dst.distance_matrix([f(v) for v in vertices]), dtype=float)[:, images]
    off = ~np.eye(len(vertices), dtype=bool)
    return int(np.ceil(d2[off] / d1[off]).max())


def _require_bijection(f, dst):
    if not f.injective:
        raise NotBijectiveError("map is not injective")
    codomain = f.codomain
    if codomain is None and getattr(dst, "finite", False):
        codomain = frozenset(dst.vertices)
    if codomain is not None and f.image != codomain:
        missed = sorted(codomain - f.image)
        raise NotBijectiveError("map misses {} vertex(es) of the codomain, e.g. {}".format(
            len(missed), missed[:5]))


def check_asymorphism(f, src, dst):
    """Forward and inverse edge constants of a bijection.

    Between finite spaces every bijection is an asymorphism. Otherwise both
    directions are judged at the explored scale: the largest image distance
    across the edges reaching each layer of ``src`` (for the inverse, the
    layer of the preimage) must stay bounded in the sense of
    :func:`~asymray.ballean.bounded.bounded_at_scale`.

    :returns: :data:`AsymorphismReport`
    """
    _require_bijection(f, dst)
    inverse = VertexMap({w: v for v, w in f.forward.items()})
    edges, values = _edge_images(f, src, dst)
    inv_edges, inv_values = _edge_images(inverse, dst, src)
    forward_m, forward_witness = _largest(edges, values)
    inverse_m, inverse_witness = _largest(inv_edges, inv_values)
    forward_profile = _layer_profile(edges, values, src.layer_of)
    inverse_profile = _layer_profile(inv_edges, inv_values, lambda w: src.layer_of(inverse(w)))
    if src.finite and dst.finite:
        is_asymorphism = True
    else:
        is_asymorphism = bounded_at_scale(forward_profile) and bounded_at_scale(inverse_profile)
    logger.info("asymorphism constants: forward %d, inverse %d (bounded at scale: %s)", forward_m,
                inverse_m, is_asymorphism)
    return AsymorphismReport(forward_m, inverse_m, is_asymorphism, forward_witness,
                             inverse_witness, forward_profile, inverse_profile)


def pushforward_bounded_check(f, family, src, dst):
    """Whether f carries ``family`` to a family that is bounded in ``dst``.

    :returns: :data:`PushforwardReport` with the family radius certificates
        (or unbounded reports) on both sides.
    """
    source = family_radius(src, family)
    image = family_radius(dst, [f.image_of(member) for member in family])
    bounded = isinstance(image, BoundedFamilyCertificate)
    return PushforwardReport(bounded, source, image)


def bounded_classification(g1, g2):
    """Classify two complete (hence bounded) graphs up to asymorphism.

    Bounded graphs are asymorphic iff they have equally many vertices; the
    witness pairs the vertices in id order.
    """
    if not (g1.complete and g2.complete):
        raise ContractError("bounded classification needs complete graphs")
    sizes = (len(g1), len(g2))
    diameters = (g1.diameter(), g2.diameter())
    if sizes[0] != sizes[1]:
        logger.info("not asymorphic: %d vs %d vertices", *sizes)
        return BoundedClassification(False, sizes, diameters, None, None, None)
    witness = VertexMap(zip(g1.vertices, g2.vertices), codomain=g2.vertices)
    report = check_asymorphism(witness, g1, g2)
    bound = max(diameters)
    ensure(report.forward_m <= bound and report.inverse_m <= bound,
           "bijection constants ({}, {}) exceed the diameter bound {}", report.forward_m,
           report.inverse_m, bound)
    return BoundedClassification(True, sizes, diameters, witness, report.forward_m,
                                 report.inverse_m)


def ball_mapping_profile(f, src, dst, radii):
    """For each alpha, the least beta with f(B(x, alpha)) inside B(f(x), beta)
    for every x in the domain.

    Only for complete graphs, where every ball is exact.
    """
    if not (src.complete and dst.complete):
        raise ContractError("ball mapping profile needs complete graphs")
    domain = [v for v in src.vertices if v in f.forward]
    index = {v: i for i, v in enumerate(dst.vertices)}
    d2 = np.asarray(dst.distance_matrix([f(v) for v in domain]))
    profile = []
    for alpha in radii:
        beta = 0
        for row, x in enumerate(domain):
            ball = [y for y in src.ball(x, alpha) if y in f.forward]
            beta = max(beta, int(max(d2[row, index[f(y)]] for y in ball)))
        profile.append((alpha, beta))
    return profile
