import numpy as np

from .truncation import Distance, UnexploredVertexError


class RayPrefix:
    """The integer interval {0, ..., length - 1} with metric |i - j|.

    Stands in for a prefix of the ray: maps into the ray are maps into a
    RayPrefix, so ray truncations never need to be materialised. Every
    distance is exact and the space counts as complete.
    """

    complete = True
    convex = True
    finite = False

    def __init__(self, length):
        if length < 1:
            raise ValueError("a ray prefix needs at least one vertex")
        self.length = length
        self.vertices = tuple(range(length))
        self.name = "ray[0..{}]".format(length - 1)

    def __len__(self):
        return self.length

    def __contains__(self, v):
        return isinstance(v, int) and 0 <= v < self.length

    def __repr__(self):
        return "RayPrefix({})".format(self.length)

    @property
    def edges(self):
        return tuple((i, i + 1) for i in range(self.length - 1))

    def layer_of(self, v):
        if v not in self:
            raise UnexploredVertexError("{} is not in {}".format(v, self.name))
        return v

    def distance(self, u, v):
        self.layer_of(u)
        self.layer_of(v)
        return Distance(abs(u - v), True)

    def is_exact_distance(self, u, v, value):
        return True

    def pair_distances(self, pairs):
        pairs = np.asarray(list(pairs), dtype=int).reshape(-1, 2)
        for v in pairs.ravel():
            self.layer_of(int(v))
        return np.abs(pairs[:, 0] - pairs[:, 1])

    def ball(self, v, r, strict=True):
        self.layer_of(v)
        return frozenset(range(max(0, v - r), min(self.length, v + r + 1)))

    def is_exact_ball(self, v, r):
        return True

    def diameter(self):
        return self.length - 1

    def distance_matrix(self, sources=None):
        if sources is None:
            sources = self.vertices
        return np.abs(np.subtract.outer(np.asarray(sources), np.arange(self.length)))

    def member_radius(self, members, strict=True):
        """Least radius of an interval ball containing ``members``, and its
        (least) centre"""
        members = list(members)
        if not members:
            return 0, 0
        for v in members:
            self.layer_of(v)
        lo, hi = min(members), max(members)
        return (hi - lo + 1) // 2, (lo + hi) // 2
