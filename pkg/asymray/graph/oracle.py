import logging

logger = logging.getLogger(__name__)


class OracleViolationError(Exception):
    """Raised when a neighbour function is not a symmetric, irreflexive
    adjacency relation on the explored region."""

    def __init__(self, u, v, reason):
        super().__init__("oracle violation on pair ({}, {}): {}".format(u, v, reason))
        self.pair = (u, v)


class AdjacencyOracle:
    """Lazily evaluated, locally finite graph presentation.

    :param neighbors: callable mapping a vertex id to a finite ordered
        sequence of vertex ids.
    :param origin: designated base vertex.
    :param acyclic: True if the presented graph is known to be a tree. Only
        built-in generators declare this; it lets truncations treat explored
        distances as exact.
    :param name: label used in logs and certificate documents.
    """

    def __init__(self, neighbors, origin, acyclic=False, name="oracle"):
        self._neighbors = neighbors
        self.origin = origin
        self.acyclic = acyclic
        self.name = name

    def neighbors(self, v):
        """Return the neighbour list of v with duplicates collapsed.

        Raises OracleViolationError if v lists itself.
        """
        seen = set()
        result = []
        for w in self._neighbors(v):
            if w == v:
                raise OracleViolationError(v, w, "vertex lists itself as a neighbour")
            if w not in seen:
                seen.add(w)
                result.append(w)
        return result

    def __repr__(self):
        return "AdjacencyOracle({}, origin={})".format(self.name, self.origin)


class EdgeListOracle(AdjacencyOracle):
    """Finite graph given by an explicit undirected edge list.

    Neighbour lists are sorted by vertex id. The origin defaults to the least
    vertex id.
    """

    def __init__(self, edges, vertices=(), origin=None, name="edge-list"):
        adjacency = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise OracleViolationError(u, v, "self-loop in edge list")
            adjacency.setdefault(u, set()).add(v)
            adjacency.setdefault(v, set()).add(u)
        if not adjacency:
            raise ValueError("edge list defines no vertices")
        self._adjacency = {v: sorted(ws) for v, ws in adjacency.items()}
        if origin is None:
            origin = min(self._adjacency)
        elif origin not in self._adjacency:
            raise ValueError("origin {} is not a vertex of the graph".format(origin))
        super().__init__(self._lookup, origin, name=name)

    def _lookup(self, v):
        try:
            return self._adjacency[v]
        except KeyError:
            raise ValueError("vertex {} is not in the edge list".format(v))

    @property
    def vertices(self):
        return sorted(self._adjacency)

    def __len__(self):
        return len(self._adjacency)
