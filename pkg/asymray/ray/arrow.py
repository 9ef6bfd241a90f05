import logging

from ..consistency import ensure

logger = logging.getLogger(__name__)


class ArrowTooShortError(Exception):
    """Raised when a finite graph has no path reaching the requested depth."""
    pass


class Arrow:
    """Prefix a_0, ..., a_N of a geodesic ray starting at a_0."""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        self.position = {v: n for n, v in enumerate(self.vertices)}

    @property
    def base(self):
        return self.vertices[0]

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, n):
        return self.vertices[n]

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v):
        return v in self.position

    def __repr__(self):
        return "Arrow(length={}, base={})".format(len(self), self.base)

    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    def validate(self, t):
        """Check injectivity, consecutive adjacency and a_i in S(a_0, i)"""
        ensure(len(self.position) == len(self.vertices), "arrow repeats a vertex")
        ensure(self.base == t.root, "arrow starts at {}, not at the root {}", self.base,
               t.root)
        for n, v in enumerate(self.vertices):
            ensure(t.layer_of(v) == n, "arrow vertex {} lies in layer {}, not {}", v,
                   t.layer_of(v), n)
        for u, v in self.edges():
            ensure(v in t.neighbors(u), "arrow vertices {} and {} are not adjacent", u, v)


def find_arrow(t, length=None):
    """The arrow ending at the least vertex of layer ``length`` (default: the
    exploration depth), found by walking BFS parents back to the root.

    Raises :class:`ArrowTooShortError` when the graph is exhausted before
    that layer.
    """
    if length is None:
        length = t.depth
    if length < 1:
        raise ArrowTooShortError("an arrow needs depth at least 1")
    if length > t.radius:
        raise ArrowTooShortError("{} is exhausted at depth {}, no arrow of length {}".format(
            t.name, t.radius, length))
    v = t.layers[length][0]
    path = [v]
    while v != t.root:
        v = t.parent[v]
        path.append(v)
    arrow = Arrow(reversed(path))
    arrow.validate(t)
    logger.debug("arrow ends at %d", arrow[-1])
    return arrow
