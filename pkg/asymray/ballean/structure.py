"""
Explicit finite ball structures (X, P, B) and the four symmetry and
multiplicativity predicates.

A ball structure is stored as a boolean array ``table[a, i, j]``, true iff the
j-th support element lies in the ball of the a-th radius around the i-th
support element. The star ball B*(x, alpha) = {y : x in B(y, alpha)} is then
the transpose of the same radius slice, and B(B(x, alpha), beta) is a boolean
matrix product.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..graph.truncation import ContractError

logger = logging.getLogger(__name__)


class BallStructureError(Exception):
    """Raised for unknown elements or radii, for tables violating x in B(x, alpha),
    and for malformed ball-table files."""
    pass


class BallStructure:
    """Finite ball structure.

    :param support: ordered sequence of distinct hashable elements X.
    :param radii: ordered sequence of distinct radii P; "least" always refers
        to this order.
    :param balls: mapping (x, alpha) -> iterable subset of the support; every
        pair must be present.
    """

    finite = True

    def __init__(self, support, radii, balls):
        self.support = tuple(support)
        self.radii = tuple(radii)
        if not self.support or not self.radii:
            raise BallStructureError("support and radii must be non-empty")
        self._x = {x: i for i, x in enumerate(self.support)}
        self._a = {a: i for i, a in enumerate(self.radii)}
        if len(self._x) != len(self.support) or len(self._a) != len(self.radii):
            raise BallStructureError("support and radii must not repeat elements")
        table = np.zeros((len(self.radii), len(self.support), len(self.support)), dtype=bool)
        for (x, a), members in balls.items():
            i, k = self._index(x, a)
            for y in members:
                table[k, i, self._element(y)] = True
        self._set_table(table)

    @classmethod
    def _from_array(cls, support, radii, table):
        bs = cls.__new__(cls)
        bs.support = tuple(support)
        bs.radii = tuple(radii)
        bs._x = {x: i for i, x in enumerate(bs.support)}
        bs._a = {a: i for i, a in enumerate(bs.radii)}
        bs._set_table(table)
        return bs

    def _set_table(self, table):
        diagonal = table[:, np.arange(len(self.support)), np.arange(len(self.support))]
        if not diagonal.all():
            k, i = np.argwhere(~diagonal)[0]
            raise BallStructureError("{} is not in its own ball of radius {}".format(
                self.support[i], self.radii[k]))
        self.table = table

    @classmethod
    def from_truncation(cls, t, radii=None):
        """The metric ballean B_d(x, r) = {y : d(x, y) <= r} of a complete
        truncation, with radii {0, ..., diameter} unless given."""
        if not t.complete:
            raise ContractError("metric ball structures need a complete truncation")
        d = t.distance_matrix()
        if radii is None:
            radii = range(int(d.max()) + 1)
        radii = list(radii)
        table = np.stack([d <= r for r in radii])
        return cls._from_array(t.vertices, radii, table)

    @classmethod
    def from_table_lines(cls, lines):
        """Parse the ball-table format::

            support: n, radii: k
            x alpha: y1 y2 ...

        The support is {0, ..., n-1}; exactly k distinct integer radii must
        occur and every (x, alpha) pair must be listed once.
        """
        header = None
        balls = {}
        radii = []
        for line_no, line in enumerate(lines, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if header is None:
                header = _parse_header(line, line_no)
                continue
            key, sep, rest = line.partition(":")
            fields = key.split()
            if not sep or len(fields) != 2:
                raise BallStructureError("line {}: expected 'x alpha: y1 y2 ...'".format(line_no))
            try:
                x, a = int(fields[0]), int(fields[1])
                members = [int(y) for y in rest.split()]
            except ValueError:
                raise BallStructureError("line {}: entries must be integers".format(line_no))
            if not 0 <= x < header[0] or any(not 0 <= y < header[0] for y in members):
                raise BallStructureError("line {}: element outside support 0..{}".format(
                    line_no, header[0] - 1))
            if (x, a) in balls:
                raise BallStructureError("line {}: ball ({}, {}) listed twice".format(
                    line_no, x, a))
            if a not in radii:
                radii.append(a)
            balls[(x, a)] = members
        if header is None:
            raise BallStructureError("missing 'support: n, radii: k' header")
        n, k = header
        if len(radii) != k:
            raise BallStructureError("header declares {} radii, table uses {}".format(
                k, len(radii)))
        radii.sort()
        missing = [(x, a) for a in radii for x in range(n) if (x, a) not in balls]
        if missing:
            raise BallStructureError("balls missing for (x, alpha) = {}".format(
                ", ".join("({}, {})".format(x, a) for x, a in missing)))
        return cls(range(n), radii, balls)

    @classmethod
    def from_table_file(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls.from_table_lines(f)

    def _element(self, x):
        try:
            return self._x[x]
        except (KeyError, TypeError):
            raise BallStructureError("{!r} is not in the support".format(x))

    def _index(self, x, a):
        try:
            k = self._a[a]
        except (KeyError, TypeError):
            raise BallStructureError("{!r} is not a radius".format(a))
        return self._element(x), k

    def _members(self, row):
        return frozenset(self.support[j] for j in np.flatnonzero(row))

    def ball(self, x, a):
        i, k = self._index(x, a)
        return self._members(self.table[k, i])

    def star_ball(self, x, a):
        """B*(x, alpha) = {y : x in B(y, alpha)}"""
        i, k = self._index(x, a)
        return self._members(self.table[k, :, i])

    def ball_of_set(self, elements, a):
        """B(A, alpha), the union of B(x, alpha) over x in A"""
        rows = [self._index(x, a) for x in elements]
        if not rows:
            return frozenset()
        k = rows[0][1]
        return self._members(self.table[k, [i for i, _ in rows]].any(axis=0))

    def member_radius(self, members):
        """Least radius (in radius order) of a ball containing ``members``,
        and the least centre; (None, None) if no ball contains them."""
        mask = np.zeros(len(self.support), dtype=bool)
        for y in members:
            mask[self._element(y)] = True
        # covers[k, i]: the ball of radius k around element i contains the set
        covers = ~(mask[None, None, :] & ~self.table).any(axis=2)
        hits = np.argwhere(covers)
        if not len(hits):
            return None, None
        k, i = hits[0]
        return self.radii[k], self.support[i]


@dataclass
class AxiomReport:
    """Outcome of :func:`check_axioms`.

    ``witnesses`` maps each property name to {(alpha, beta): witness}; the
    witness is (alpha', beta') for the symmetry properties and gamma for the
    multiplicative ones. ``counterexamples`` maps each failed property to
    (alpha, beta, x).
    """
    lower_symmetric: bool
    upper_symmetric: bool
    lower_multiplicative: bool
    upper_multiplicative: bool
    witnesses: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)

    @property
    def is_ballean(self):
        return self.upper_symmetric and self.upper_multiplicative


PROPERTIES = ("lower_symmetric", "upper_symmetric", "lower_multiplicative",
              "upper_multiplicative")


def _first_true(flags):
    hits = np.flatnonzero(flags)
    return int(hits[0]) if len(hits) else None


def _contained(a, b):
    """For (n, n) matrix a and (k, n, n) stack b: per k, whether every row of a
    is a subset of the same row of b[k]"""
    return ~(a[None] & ~b).any(axis=(1, 2))


def _escaping_point(escapes):
    """Least point failing every candidate radius, if one exists, otherwise
    the least point failing the largest candidate.

    ``escapes[k, i]`` is true when the condition fails at point i for the
    k-th candidate.
    """
    everywhere = np.flatnonzero(escapes.all(axis=0))
    if len(everywhere):
        return int(everywhere[0])
    return int(np.flatnonzero(escapes[-1])[0])


def _escapes(inner, outer):
    """Per candidate k and point i, whether row i of inner[k] leaves row i of
    outer[k]; either argument may be a single (n, n) matrix"""
    return (inner & ~outer).any(axis=-1)


def _least_subset_witnesses(rows, stack):
    """For each k, the least k2 with rows[k] contained in stack[k2] rowwise"""
    return [_first_true(_contained(rows[k], stack)) for k in range(len(rows))]


def check_axioms(bs):
    """Decide the four properties by exhaustive search over radii and points.

    Every witness is the least radius that works. A failed symmetry property
    reports a failing alpha if there is one (paired with the least beta),
    otherwise the failing beta; a failed multiplicative property reports the
    first (alpha, beta) without a gamma. The point x violates the condition
    for every candidate radius when such a point exists, and for the largest
    candidate otherwise.
    """
    t = bs.table
    s = t.transpose(0, 2, 1)
    k = len(bs.radii)
    r = bs.radii

    def failing(inner, outer):
        return bs.support[_escaping_point(_escapes(inner, outer))]

    report = AxiomReport(True, True, True, True)
    for name in PROPERTIES:
        report.witnesses[name] = {}

    # upper symmetric: B(x,a) in B*(x,a'), B*(x,b) in B(x,b')
    _record_symmetry(report, "upper_symmetric", r, _least_subset_witnesses(t, s),
                     _least_subset_witnesses(s, t), lambda a: failing(t[a], s),
                     lambda b: failing(s[b], t))
    # lower symmetric: B*(x,a') in B(x,a), B(x,b') in B*(x,b)
    _record_symmetry(report, "lower_symmetric", r,
                     [_first_true(_contained_rev(s, t[a])) for a in range(k)],
                     [_first_true(_contained_rev(t, s[b])) for b in range(k)],
                     lambda a: failing(s, t[a]), lambda b: failing(t, s[b]))

    ti = t.astype(np.int64)
    squares = np.stack([(ti[g] @ ti[g]) > 0 for g in range(k)])
    for a in range(k):
        for b in range(k):
            key = (r[a], r[b])
            composed = (ti[a] @ ti[b]) > 0
            g = _first_true(_contained(composed, t))
            _record_single(report, "upper_multiplicative", key, g, r,
                           lambda: failing(composed, t))

            target = t[a] & t[b]
            g = _first_true([not (sq & ~target).any() for sq in squares])
            _record_single(report, "lower_multiplicative", key, g, r,
                           lambda: failing(squares, target))

    logger.debug("axioms: %s", {p: getattr(report, p) for p in PROPERTIES})
    return report


def _contained_rev(stack, b):
    """Per k, whether stack[k] is contained rowwise in the (n, n) matrix b"""
    return ~(stack & ~b[None]).any(axis=(1, 2))


def _record_symmetry(report, name, radii, wa, wb, failing_a, failing_b):
    for a, alpha_w in enumerate(wa):
        for b, beta_w in enumerate(wb):
            if alpha_w is not None and beta_w is not None:
                report.witnesses[name][(radii[a], radii[b])] = (radii[alpha_w], radii[beta_w])
    bad_a = [a for a, w in enumerate(wa) if w is None]
    bad_b = [b for b, w in enumerate(wb) if w is None]
    if bad_a:
        report.counterexamples[name] = (radii[bad_a[0]], radii[0], failing_a(bad_a[0]))
    elif bad_b:
        report.counterexamples[name] = (radii[0], radii[bad_b[0]], failing_b(bad_b[0]))
    else:
        return
    setattr(report, name, False)


def _record_single(report, name, key, g, radii, failing_x):
    if g is not None:
        report.witnesses[name][key] = radii[g]
    elif getattr(report, name):
        setattr(report, name, False)
        report.counterexamples[name] = key + (failing_x(), )


def _parse_header(line, line_no):
    try:
        parts = dict(p.split(":") for p in line.split(","))
        parts = {k.strip(): int(v) for k, v in parts.items()}
        n, k = parts["support"], parts["radii"]
    except (ValueError, KeyError):
        raise BallStructureError(
            "line {}: expected header 'support: n, radii: k'".format(line_no))
    if n < 1 or k < 1:
        raise BallStructureError("line {}: support and radii must be non-empty".format(line_no))
    return n, k
