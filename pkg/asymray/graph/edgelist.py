from .oracle import EdgeListOracle


class EdgeListParseError(Exception):
    """Raised for malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line_no, msg):
        super().__init__("line {}: {}".format(line_no, msg))
        self.line_no = line_no


def parse_edge_lines(lines):
    """Parse "u v" lines into a sorted list of undirected edges (u < v).

    '#' starts a comment, blank lines are ignored, duplicate edges (in either
    orientation) collapse. Vertex ids must be non-negative integers.
    """
    edges = set()
    for line_no, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListParseError(line_no,
                                     "expected 'u v', got {} field(s)".format(len(fields)))
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListParseError(line_no, "vertex ids must be integers")
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, "vertex ids must be non-negative")
        if u == v:
            raise EdgeListParseError(line_no, "self-loop {} {}".format(u, v))
        edges.add((min(u, v), max(u, v)))
    if not edges:
        raise EdgeListParseError(0, "no edges found")
    return sorted(edges)


def load_edge_list(path, origin=None):
    """Read an edge-list file into an :class:`EdgeListOracle`"""
    with open(path, encoding="utf-8") as f:
        edges = parse_edge_lines(f)
    return EdgeListOracle(edges, origin=origin, name=str(path))
