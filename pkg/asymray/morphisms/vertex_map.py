from ..graph.truncation import UnexploredVertexError


class NotBijectiveError(Exception):
    """Raised when a bijection is required but the map is not one."""
    pass


class MapFileError(Exception):
    """Raised for malformed or partial map files."""

    def __init__(self, msg, line_no=None, missing=()):
        if line_no is not None:
            msg = "line {}: {}".format(line_no, msg)
        super().__init__(msg)
        self.line_no = line_no
        self.missing = tuple(missing)


class VertexMap:
    """A map between vertex sets, given by its value table.

    :param forward: mapping v -> f(v).
    :param codomain: optional declared codomain; when given, ``bijective``
        also requires the image to be all of it.
    """

    def __init__(self, forward, codomain=None):
        self.forward = dict(forward)
        self.codomain = None if codomain is None else frozenset(codomain)

    def __call__(self, v):
        try:
            return self.forward[v]
        except KeyError:
            raise UnexploredVertexError("{} is not in the domain of the map".format(v))

    def __len__(self):
        return len(self.forward)

    def __eq__(self, other):
        return (isinstance(other, VertexMap) and self.forward == other.forward
                and self.codomain == other.codomain)

    def __repr__(self):
        return "VertexMap({} vertices, bijective={})".format(len(self), self.bijective)

    @property
    def domain(self):
        return frozenset(self.forward)

    @property
    def image(self):
        return frozenset(self.forward.values())

    @property
    def injective(self):
        return len(self.image) == len(self.forward)

    @property
    def bijective(self):
        if not self.injective:
            return False
        return self.codomain is None or self.image == self.codomain

    def items(self):
        """(v, f(v)) pairs in ascending v order"""
        return sorted(self.forward.items())

    def image_of(self, vertices):
        return frozenset(self(v) for v in vertices)

    def inverse(self):
        if not self.bijective:
            raise NotBijectiveError("{!r} has no inverse".format(self))
        return VertexMap({w: v for v, w in self.forward.items()}, codomain=self.domain)

    def compose(self, inner):
        """The map v -> self(inner(v))"""
        return VertexMap({v: self(w) for v, w in inner.forward.items()}, codomain=self.codomain)

    def restrict(self, vertices):
        return VertexMap({v: self(v) for v in vertices})

    def to_lines(self):
        return ["{} {}".format(v, w) for v, w in self.items()]


def identity_map(vertices):
    vertices = list(vertices)
    return VertexMap({v: v for v in vertices}, codomain=vertices)


def parse_map_lines(lines, domain=None, codomain=None):
    """Parse two-column "v f(v)" lines.

    '#' starts a comment and blank lines are ignored. When ``domain`` is
    given, every vertex of it must be mapped; the error lists the missing
    ones.
    """
    forward = {}
    for line_no, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise MapFileError("expected 'v f(v)', got {} field(s)".format(len(fields)), line_no)
        try:
            v, w = int(fields[0]), int(fields[1])
        except ValueError:
            raise MapFileError("vertex ids must be integers", line_no)
        if v < 0 or w < 0:
            raise MapFileError("vertex ids must be non-negative", line_no)
        if forward.get(v, w) != w:
            raise MapFileError("{} mapped to both {} and {}".format(v, forward[v], w), line_no)
        forward[v] = w
    if domain is not None:
        missing = sorted(set(domain) - set(forward))
        if missing:
            raise MapFileError(
                "map is missing {} vertex(es): {}".format(len(missing),
                                                          " ".join(map(str, missing))),
                missing=missing)
        forward = {v: forward[v] for v in domain}
    return VertexMap(forward, codomain=codomain)


def load_map_file(path, domain=None, codomain=None):
    with open(path, encoding="utf-8") as f:
        return parse_map_lines(f, domain=domain, codomain=codomain)
