"""
The tree criterion: deleting the edges of an arrow splits a tree into the
components T(a_n), and the tree is an asymptotic ray iff their sizes are
bounded.

On a truncation the sizes are read layer by layer: ``profile[n]`` is the
largest number of vertices of a single T(a_k) within layers 0..n. Every
vertex of T(a_k) up to layer n is joined to a_k through shallower layers, so
the profile is exact on every explored layer even where the components
themselves run past the frontier.
"""

import logging
from collections import namedtuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..ballean.bounded import bounded_at_scale
from ..consistency import ensure
from .certify import RayCertificate

logger = logging.getLogger(__name__)

#: ``components[n]`` is T(a_n) within the explored ball, ``sizes[n]`` its
#: explored size and ``exact[n]`` whether it ends before the last explored
#: layer (otherwise the size is a lower bound). ``profile[n]`` is the largest
#: component size within layers 0..n.
TreeDecomposition = namedtuple("TreeDecomposition",
                               ["arrow", "components", "sizes", "exact", "profile", "truncation"])

#: ``t`` is the largest exact component size; ``profile`` the per-layer
#: sizes the verdict was read from; ``bound_checks`` lists
#: (n, |T(a_n)|, |B(a_n, r)|) when a ray certificate was supplied.
TreeVerdict = namedtuple("TreeVerdict",
                         ["asymptotic_ray", "t", "s", "sizes", "exact", "profile", "bound_checks"])


class NotATreeError(Exception):
    """Raised when the explored subgraph contains a cycle."""
    pass


def _size_profile(t, labels, arrow_labels):
    row = {label: c for c, label in enumerate(arrow_labels)}
    components = [row[int(labels[t.index[v]])] for v in t.vertices]
    layers = [t.layer_of(v) for v in t.vertices]
    # counts[c, n]: vertices of component c in layer n
    counts = np.zeros((len(arrow_labels), len(t.layers)), dtype=int)
    np.add.at(counts, (components, layers), 1)
    return [int(x) for x in counts.cumsum(axis=1).max(axis=0)]


def tree_decompose(t, arrow):
    """Split the explored tree along the arrow's edges."""
    if not nx.is_forest(t.to_networkx()):
        raise NotATreeError("explored subgraph of {} contains a cycle".format(t.name))
    cut = set(arrow.edges()) | {(v, u) for u, v in arrow.edges()}
    kept = [(t.index[u], t.index[v]) for u, v in t.edges if (u, v) not in cut]
    n = len(t.vertices)
    rows = [i for i, _ in kept]
    cols = [j for _, j in kept]
    graph = csr_matrix((np.ones(len(kept)), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=False)

    members = {}
    for v, i in t.index.items():
        members.setdefault(int(labels[i]), []).append(v)
    components, sizes, exact = [], [], []
    for a in arrow:
        component = frozenset(members[int(labels[t.index[a]])])
        ensure(sum(1 for v in component if v in arrow) == 1,
               "component of arrow vertex {} contains another arrow vertex", a)
        components.append(component)
        sizes.append(len(component))
        exact.append(t.complete or max(t.layer_of(v) for v in component) < t.depth)
    ensure(sum(sizes) == len(t.vertices), "components do not partition the explored vertices")
    profile = _size_profile(t, labels, [int(labels[t.index[a]]) for a in arrow])
    logger.debug("component sizes: %s", sizes)
    return TreeDecomposition(arrow, components, sizes, exact, profile, t)


def theorem2_decide(td, s, certificate=None):
    """Decide the tree criterion from a decomposition.

    The verdict is :func:`~asymray.ballean.bounded.bounded_at_scale` on the
    per-layer size profile, over the layers the ray criteria reported (all
    explored layers when no ``certificate`` is given).

    :param s: maximum degree of the tree.
    :param certificate: result of
        :func:`~asymray.ray.certify.certify_ray` on the same truncation; the
        verdicts must agree, and for a certificate of cover radius r every
        |T(a_n)| <= |B(a_n, r)| <= s^r + 1.
    """
    t = td.truncation
    last = len(td.profile) - 1
    if certificate is not None:
        last = min(last, t.certified_layers(certificate.margin)[-1])
    profile = td.profile[:last + 1]
    bounded = bounded_at_scale(profile)
    exact_sizes = [size for size, exact in zip(td.sizes, td.exact) if exact]
    largest = max(exact_sizes) if exact_sizes else None
    logger.info("tree sizes on layers 0..%d: largest %d, bounded=%s", last, max(profile),
                bounded)

    checks = []
    if certificate is not None:
        certified = isinstance(certificate, RayCertificate)
        ensure(certified == bounded,
               "tree criterion (bounded={}) disagrees with the ray criteria (certified={})",
               bounded, certified)
        if certified:
            checks = _ball_bounds(td, s, certificate.r)
    return TreeVerdict(bounded, largest, s, td.sizes, td.exact, profile, checks)


def _ball_bounds(td, s, r):
    t = td.truncation
    checks = []
    for n, a in enumerate(td.arrow):
        if not td.exact[n] or not t.is_exact_ball(a, r):
            continue
        ball = len(t.ball(a, r))
        ensure(td.sizes[n] <= ball <= s**r + 1,
               "|T(a_{0})| = {1}, |B(a_{0}, {2})| = {3}, s^r + 1 = {4}", n, td.sizes[n], r, ball,
               s**r + 1)
        checks.append((n, td.sizes[n], ball))
    return checks
