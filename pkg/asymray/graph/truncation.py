"""
Exact breadth-first exploration of lazily presented graphs.

A :class:`Truncation` is the explored ball B(root, N) of an
:class:`~asymray.graph.oracle.AdjacencyOracle`: its layers S(root, n), the
BFS parent tree, and the subgraph induced on the ball. Neighbour lists of the
depth-N layer are fetched as well, so edges among depth-N vertices are known
and the degree of every explored vertex is exact.

Values computed inside a truncation are only certified when no shorter path
can leave the explored ball:

    - distance(u, v) = c is exact if both endpoints lie in layers <= N - ceil(c/2)
    - ball(v, r) is exact if r <= N - layer(v)
    - a bounded-family radius rho for a member whose deepest vertex lies in
      layer n is exact if rho <= N - n

A truncation is *convex* when it is complete, or when its oracle declares the
graph to be a tree (balls around the root of a tree are geodesically convex).
In a convex truncation all of the above hold unconditionally.
"""

import logging
from collections import namedtuple
from functools import cached_property

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .oracle import OracleViolationError

logger = logging.getLogger(__name__)

#: Shortest-path length inside the explored subgraph, and whether it is
#: certified to equal the distance in the full graph.
Distance = namedtuple("Distance", ["value", "exact"])

# Number of BFS sources handled per scipy call; bounds distance-matrix memory.
_SOURCE_CHUNK = 256


class UnexploredVertexError(Exception):
    """Raised when a vertex outside the explored ball is used."""
    pass


class DepthRangeError(ValueError):
    """Raised when a sphere index exceeds the exploration depth."""
    pass


class MarginError(Exception):
    """Raised when a value cannot be certified within the validity margin."""
    pass


class ContractError(Exception):
    """Raised when an operation is applied outside its contract, e.g. the
    diameter of an incomplete truncation."""
    pass


class Truncation:
    """The explored BFS ball of radius ``depth`` around ``root``.

    Use :func:`explore` to construct one.
    """

    def __init__(self, root, depth, layers, parent, adjacency, degrees, complete, acyclic,
                 name):
        self.root = root
        self.depth = depth
        self.layers = layers
        self.parent = parent
        self._adjacency = adjacency
        self.degrees = degrees
        self.complete = complete
        self.convex = complete or acyclic
        # a complete truncation is the whole (finite) graph
        self.finite = complete
        self.name = name
        self.dist_from_root = {v: n for n, layer in enumerate(layers) for v in layer}
        self.vertices = tuple(sorted(self.dist_from_root))
        self.index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.dist_from_root

    def __repr__(self):
        return "Truncation({}, root={}, depth={}, vertices={}, complete={})".format(
            self.name, self.root, self.depth, len(self), self.complete)

    @property
    def radius(self):
        """Index of the deepest non-empty layer"""
        return len(self.layers) - 1

    @cached_property
    def edges(self):
        """Explored edges as sorted (u, v) pairs with u < v"""
        return tuple(
            sorted((u, v) for u, ws in self._adjacency.items() for v in ws if u < v))

    def neighbors(self, v):
        """Explored neighbours of v, in oracle order"""
        self.layer_of(v)
        return self._adjacency[v]

    def layer_of(self, v):
        try:
            return self.dist_from_root[v]
        except KeyError:
            raise UnexploredVertexError("vertex {} is not explored in {}".format(v, self))

    def certified_layers(self, margin=0):
        """Indices of the layers at most depth - margin (all layers when complete)"""
        if self.complete:
            return range(len(self.layers))
        return range(min(self.radius, self.depth - margin) + 1)

    def certified_vertices(self, margin=0):
        return [v for n in self.certified_layers(margin) for v in self.layers[n]]

    def is_exact_distance(self, u, v, value):
        if self.convex:
            return True
        bound = self.depth - (value + 1) // 2
        return self.layer_of(u) <= bound and self.layer_of(v) <= bound

    def is_exact_ball(self, v, r):
        return self.convex or r <= self.depth - self.layer_of(v)

    def distance(self, u, v):
        """Shortest-path length between two explored vertices.

        :returns: :data:`Distance` (value, exact); exact is False when a
            shorter path could route through unexplored territory.
        """
        self.layer_of(u)
        self.layer_of(v)
        value = int(self.distance_matrix([u])[0, self.index[v]])
        return Distance(value, self.is_exact_distance(u, v, value))

    def _ball_around(self, sources, r):
        idx = [self.index[v] for v in sources]
        if not idx:
            return frozenset()
        d = dijkstra(self._csgraph, directed=False, unweighted=True, indices=idx, limit=r,
                     min_only=True)
        return frozenset(self.vertices[i] for i in np.flatnonzero(d <= r))

    def sphere(self, n):
        """S(root, n)"""
        if n < 0 or n > self.depth:
            raise DepthRangeError("sphere {} outside explored depth {}".format(n, self.depth))
        if n >= len(self.layers):
            return frozenset()
        return frozenset(self.layers[n])

    def ball(self, v, r, strict=True):
        """B(v, r) within the explored subgraph.

        With strict=True a :class:`MarginError` is raised unless the ball is
        certified exact.
        """
        if strict and not self.is_exact_ball(v, r):
            raise MarginError("ball of radius {} around {} (layer {}) reaches beyond "
                              "depth {}".format(r, v, self.layer_of(v), self.depth))
        self.layer_of(v)
        return self._ball_around([v], r)

    def ball_of_set(self, vertices, r, strict=True):
        """B(A, r), the union of the balls B(a, r) over a in A"""
        vertices = list(vertices)
        for v in vertices:
            if strict and not self.is_exact_ball(v, r):
                raise MarginError("ball of radius {} around {} (layer {}) reaches beyond "
                                  "depth {}".format(r, v, self.layer_of(v), self.depth))
            self.layer_of(v)
        return self._ball_around(vertices, r)

    def _degree_layers(self):
        if self.complete:
            return self.layers
        return self.layers[:max(self.depth, 1)]

    def layer_degrees(self):
        """Maximum degree per layer, over layers with fully explored neighbourhoods"""
        return [max(self.degrees[v] for v in layer) for layer in self._degree_layers()]

    def max_degree(self):
        return max(self.layer_degrees())

    def max_degree_vertices(self):
        """Vertices of maximum degree, in id order"""
        best = self.max_degree()
        return sorted(v for layer in self._degree_layers() for v in layer
                      if self.degrees[v] == best)

    def diameter(self):
        if not self.complete:
            raise ContractError("diameter needs a complete truncation")
        return int(self.distance_matrix().max())

    @cached_property
    def _csgraph(self):
        n = len(self.vertices)
        rows, cols = [], []
        for u, v in self.edges:
            rows.append(self.index[u])
            cols.append(self.index[v])
        data = np.ones(len(rows))
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    def distance_matrix(self, sources=None):
        """Explored distances from each source to every vertex.

        Rows follow ``sources`` (default: all vertices in id order), columns
        follow :attr:`vertices`. Exactness is not checked here.
        """
        if sources is None:
            sources = self.vertices
        idx = [self.index[v] for v in sources]
        if not idx:
            return np.zeros((0, len(self.vertices)))
        return dijkstra(self._csgraph, directed=False, unweighted=True, indices=idx)

    def pair_distances(self, pairs):
        """Explored distances d(u, v) for a sequence of (u, v) pairs, one
        batch of sources per scipy call. Exactness is not checked here."""
        pairs = list(pairs)
        out = np.zeros(len(pairs), dtype=int)
        for start in range(0, len(pairs), _SOURCE_CHUNK):
            chunk = pairs[start:start + _SOURCE_CHUNK]
            for u, v in chunk:
                self.layer_of(u)
                self.layer_of(v)
            targets = [self.index[v] for _, v in chunk]
            d = self.distance_matrix([u for u, _ in chunk])
            out[start:start + len(chunk)] = d[np.arange(len(chunk)), targets]
        return out

    def member_radius(self, members, strict=True):
        """Least radius of a ball containing ``members``, and its centre.

        Candidate centres range over every explored vertex; ties go to the
        least vertex id. With strict=True a :class:`MarginError` is raised
        if the radius is not certified.

        Eccentricities are bounded from below by the distances to the members
        searched so far. The candidate with the least bound is searched
        exactly, then its farthest unsearched member becomes the next source,
        until no candidate can beat the best centre found.
        """
        members = sorted(members)
        if not members:
            return 0, self.vertices[0]
        deepest = max(self.layer_of(v) for v in members)
        cols = np.array([self.index[v] for v in members])
        n = len(self.vertices)
        order = np.arange(n)
        lower = np.zeros(n)
        unchecked = np.ones(n, dtype=bool)
        searched = np.zeros(len(members), dtype=bool)
        best, best_i = np.inf, n
        while True:
            open_ = unchecked & ((lower < best) | ((lower == best) & (order < best_i)))
            if not open_.any():
                break
            candidates = np.flatnonzero(open_)
            i = int(candidates[np.argmin(lower[candidates])])
            unchecked[i] = False
            reach = self.distance_matrix([self.vertices[i]])[0, cols]
            ecc = reach.max()
            if ecc < best or (ecc == best and i < best_i):
                best, best_i = ecc, i
            far = np.flatnonzero(~searched & (reach == ecc))
            if not len(far):
                far = np.flatnonzero(~searched)
            if len(far):
                searched[far[0]] = True
                np.maximum(lower, self.distance_matrix([members[far[0]]])[0], out=lower)
        radius = int(best)
        if strict and not self.convex and radius > self.depth - deepest:
            raise MarginError("radius {} of a set reaching layer {} is not certified at "
                              "depth {}".format(radius, deepest, self.depth))
        return radius, self.vertices[best_i]

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


def explore(oracle, root, depth):
    """Explore the BFS ball of radius ``depth`` around ``root``.

    Layers are emitted in ascending vertex-id order and the BFS parent of a
    vertex is its least-id neighbour in the previous layer, so repeated
    explorations are identical.

    Raises :class:`OracleViolationError` for asymmetric or reflexive
    neighbour lists on the explored region.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not isinstance(root, int) or root < 0:
        raise ValueError("vertex ids are non-negative integers, got {!r}".format(root))
    dist = {root: 0}
    parent = {}
    fetched = {}
    layers = [(root, )]
    n = 0
    while True:
        nxt = []
        for v in layers[n]:
            ws = oracle.neighbors(v)
            fetched[v] = ws
            if n == depth:
                continue
            for w in ws:
                if w not in dist:
                    if not isinstance(w, int) or w < 0:
                        raise OracleViolationError(v, w,
                                                   "vertex ids must be non-negative integers")
                    dist[w] = n + 1
                    parent[w] = v
                    nxt.append(w)
        if not nxt:
            break
        layers.append(tuple(sorted(nxt)))
        n += 1
        logger.debug("layer %d: %d vertices", n, len(nxt))

    adjacency = {}
    complete = True
    lookup = {v: set(ws) for v, ws in fetched.items()}
    for v, ws in fetched.items():
        explored = []
        for w in ws:
            if w not in dist:
                complete = False
                continue
            if v not in lookup[w]:
                raise OracleViolationError(v, w, "neighbour lists are not symmetric")
            explored.append(w)
        adjacency[v] = tuple(explored)
    degrees = {v: len(ws) for v, ws in fetched.items()}

    t = Truncation(root, depth, layers, parent, adjacency, degrees, complete, oracle.acyclic,
                   oracle.name)
    logger.info("explored %s from %d: %d layers, %d vertices, complete=%s", oracle.name,
                root, len(layers), len(t), complete)
    return t
