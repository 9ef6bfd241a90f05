"""
Built-in graph families used as the test corpus and as exactly-known inputs.

Every family is presented lazily through an :class:`AdjacencyOracle` with
origin 0, and declares its sphere sizes around the origin in closed form
(:meth:`GeneratorSpec.layer_size`). Exploration results are checked against
these declarations whenever a certificate is produced.

Vertex ids are assigned so that the "backbone" vertex of every sphere has the
least id within that sphere where the family has a backbone:

    - ray, path: vertex n is n
    - caterpillars and combs: spine vertex n is 2n, the vertex at height j on
      the leg hanging from spine vertex m is 2*pair(m, j) + 1, pair being the
      Cantor pairing (pair(m, j) >= m + j, so legs never undercut the spine)
    - ladder: rung end (i, j), j in {0, 1}, is 2i + j
    - k-ary trees: heap numbering, children of v are kv + 1, ..., kv + k

Generator strings: "ray", "path:N", "cycle:N", "complete:N", "ladder:N|inf",
"comb:N|inf", "kary:K:D|inf", "caterpillar:const:C", "caterpillar:linear".
"""

from enum import Enum, unique
from math import isqrt

from .oracle import AdjacencyOracle


class GeneratorSpecError(Exception):
    """Raised for generator strings that do not name a built-in family."""
    pass


@unique
class Family(Enum):
    ray = "ray"
    path = "path"
    cycle = "cycle"
    complete = "complete"
    ladder = "ladder"
    comb = "comb"
    kary = "kary"
    caterpillar = "caterpillar"


_ACYCLIC = {Family.ray, Family.path, Family.comb, Family.kary, Family.caterpillar}


def _pair(m, j):
    return (m + j) * (m + j + 1) // 2 + j


def _unpair(k):
    w = (isqrt(8 * k + 1) - 1) // 2
    j = k - w * (w + 1) // 2
    return w - j, j


def spine_vertex(n):
    """Id of spine vertex n of a comb or caterpillar"""
    return 2 * n


def leg_vertex(m, j):
    """Id of the vertex at height j >= 1 on the leg at spine vertex m"""
    if j < 1:
        raise ValueError("leg heights start at 1")
    return 2 * _pair(m, j) + 1


def ladder_vertex(i, j):
    """Id of rung end (i, j) of a ladder"""
    if j not in (0, 1):
        raise ValueError("ladder side must be 0 or 1")
    return 2 * i + j


class GeneratorSpec:
    """A built-in graph family with its parameters.

    :param family: a :class:`Family` member.
    :param size: N for the finite families (path, cycle, complete, and the
        finite ladder/comb), depth D for k-ary trees; None for unbounded
        presentations.
    :param arity: K for k-ary trees.
    :param leg: ("const", C) or ("linear", None) for caterpillars.
    """

    def __init__(self, family, size=None, arity=None, leg=None):
        self.family = family
        self.size = size
        self.arity = arity
        self.leg = leg
        self._validate()

    def _validate(self):
        f = self.family
        if f in (Family.path, Family.cycle, Family.complete) and self.size is None:
            raise GeneratorSpecError("{} needs a size".format(f.value))
        if self.size is not None and self.size < 0:
            raise GeneratorSpecError("size must be non-negative")
        if f == Family.cycle and self.size < 3:
            raise GeneratorSpecError("cycle needs at least 3 vertices")
        if f in (Family.complete, Family.ladder, Family.comb) and self.size == 0:
            raise GeneratorSpecError("{} needs at least one vertex".format(f.value))
        if f == Family.kary and (self.arity is None or self.arity < 1):
            raise GeneratorSpecError("kary needs an arity K >= 1")
        if f == Family.caterpillar:
            if self.leg is None or self.leg[0] not in ("const", "linear"):
                raise GeneratorSpecError("caterpillar needs a const or linear leg profile")
            if self.leg[0] == "const" and self.leg[1] < 0:
                raise GeneratorSpecError("caterpillar leg length must be non-negative")

    def __str__(self):
        f = self.family
        n = "inf" if self.size is None else str(self.size)
        if f == Family.ray:
            return "ray"
        if f == Family.kary:
            return "kary:{}:{}".format(self.arity, n)
        if f == Family.caterpillar:
            if self.leg[0] == "const":
                return "caterpillar:const:{}".format(self.leg[1])
            return "caterpillar:linear"
        return "{}:{}".format(f.value, n)

    def __repr__(self):
        return "GeneratorSpec({!r})".format(str(self))

    def __eq__(self, other):
        return isinstance(other, GeneratorSpec) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    @property
    def unbounded(self):
        """True if the presentation has infinitely many vertices"""
        if self.family == Family.ray:
            return True
        if self.family in (Family.ladder, Family.comb, Family.kary, Family.caterpillar):
            return self.size is None
        return False

    @property
    def acyclic(self):
        if self.family == Family.complete:
            return self.size <= 2
        return self.family in _ACYCLIC

    @property
    def origin(self):
        return 0

    def leg_length(self, m):
        """Leg length at spine vertex m (combs have legs of length 1)"""
        if self.family == Family.comb:
            return 1
        kind, c = self.leg
        return c if kind == "const" else m

    def vertex_count(self):
        """Number of vertices of a finite family"""
        if self.unbounded:
            raise ValueError("{} has infinitely many vertices".format(self))
        f, n = self.family, self.size
        if f == Family.path:
            return n + 1
        if f in (Family.cycle, Family.complete):
            return n
        if f in (Family.ladder, Family.comb):
            return 2 * n
        if f == Family.kary:
            k = self.arity
            return n + 1 if k == 1 else (k**(n + 1) - 1) // (k - 1)
        raise AssertionError(f)

    def layer_size(self, n):
        """Closed-form |S(origin, n)|"""
        if n < 0:
            return 0
        f, size = self.family, self.size
        if f == Family.ray:
            return 1
        if f == Family.path:
            return 1 if n <= size else 0
        if f == Family.cycle:
            if n == 0:
                return 1
            if 2 * n < size:
                return 2
            return 1 if 2 * n == size else 0
        if f == Family.complete:
            if n == 0:
                return 1
            return size - 1 if n == 1 else 0
        if f == Family.ladder:
            if n == 0:
                return 1
            bounded = size is not None
            return int(not bounded or n < size) + int(not bounded or n - 1 < size)
        if f == Family.kary:
            if size is not None and n > size:
                return 0
            return self.arity**n
        # combs and caterpillars: the spine vertex plus every leg vertex at
        # height n - m on spine vertex m
        count = int(size is None or n < size)
        for m in range(n):
            if size is not None and m >= size:
                break
            if 1 <= n - m <= self.leg_length(m):
                count += 1
        return count

    def to_oracle(self):
        """Return the lazy adjacency oracle of this family"""
        f = self.family
        if f == Family.ray:
            fn = _ray_neighbors
        elif f == Family.path:
            fn = self._path_neighbors
        elif f == Family.cycle:
            fn = self._cycle_neighbors
        elif f == Family.complete:
            fn = self._complete_neighbors
        elif f == Family.ladder:
            fn = self._ladder_neighbors
        elif f == Family.kary:
            fn = self._kary_neighbors
        else:
            fn = self._caterpillar_neighbors
        return AdjacencyOracle(fn, self.origin, acyclic=self.acyclic, name=str(self))

    def _check_range(self, v, count):
        if not 0 <= v < count:
            raise ValueError("{} is not a vertex of {}".format(v, self))

    def _path_neighbors(self, v):
        self._check_range(v, self.size + 1)
        return [w for w in (v - 1, v + 1) if 0 <= w <= self.size]

    def _cycle_neighbors(self, v):
        self._check_range(v, self.size)
        return [(v - 1) % self.size, (v + 1) % self.size]

    def _complete_neighbors(self, v):
        self._check_range(v, self.size)
        return [w for w in range(self.size) if w != v]

    def _ladder_neighbors(self, v):
        if v < 0 or (self.size is not None and v >= 2 * self.size):
            raise ValueError("{} is not a vertex of {}".format(v, self))
        i, j = divmod(v, 2)
        result = [ladder_vertex(i, 1 - j)]
        if i > 0:
            result.append(ladder_vertex(i - 1, j))
        if self.size is None or i + 1 < self.size:
            result.append(ladder_vertex(i + 1, j))
        return result

    def _kary_neighbors(self, v):
        if v < 0:
            raise ValueError("{} is not a vertex of {}".format(v, self))
        k = self.arity
        level, u = 0, v
        while u > 0:
            u = (u - 1) // k
            level += 1
        if self.size is not None and level > self.size:
            raise ValueError("{} is not a vertex of {}".format(v, self))
        result = [(v - 1) // k] if v > 0 else []
        if self.size is None or level < self.size:
            result.extend(k * v + c for c in range(1, k + 1))
        return result

    def _caterpillar_neighbors(self, v):
        if v < 0:
            raise ValueError("{} is not a vertex of {}".format(v, self))
        size = self.size
        if v % 2 == 0:
            n = v // 2
            if size is not None and n >= size:
                raise ValueError("{} is not a vertex of {}".format(v, self))
            result = [spine_vertex(n - 1)] if n > 0 else []
            if size is None or n + 1 < size:
                result.append(spine_vertex(n + 1))
            if self.leg_length(n) >= 1:
                result.append(leg_vertex(n, 1))
            return result
        m, j = _unpair((v - 1) // 2)
        length = self.leg_length(m)
        if j < 1 or j > length or (size is not None and m >= size):
            raise ValueError("{} is not a vertex of {}".format(v, self))
        result = [spine_vertex(m) if j == 1 else leg_vertex(m, j - 1)]
        if j < length:
            result.append(leg_vertex(m, j + 1))
        return result


def _ray_neighbors(v):
    if v < 0:
        raise ValueError("{} is not a vertex of the ray".format(v))
    return [v - 1, v + 1] if v > 0 else [1]


def _parse_size(text, allow_inf):
    if allow_inf and text == "inf":
        return None
    try:
        value = int(text)
    except ValueError:
        raise GeneratorSpecError("expected an integer{}, got '{}'".format(
            " or 'inf'" if allow_inf else "", text))
    if value < 0:
        raise GeneratorSpecError("expected a non-negative integer, got '{}'".format(text))
    return value


def parse_generator(text):
    """Parse a generator string such as "comb:inf" or "kary:2:8"."""
    parts = text.strip().split(":")
    try:
        family = Family(parts[0])
    except ValueError:
        raise GeneratorSpecError("unknown graph family '{}'".format(parts[0]))
    args = parts[1:]

    def expect(count):
        if len(args) != count:
            raise GeneratorSpecError("'{}' expects {} parameter(s), got {}".format(
                family.value, count, len(args)))

    if family == Family.ray:
        expect(0)
        return GeneratorSpec(family)
    if family in (Family.path, Family.cycle, Family.complete):
        expect(1)
        return GeneratorSpec(family, _parse_size(args[0], False))
    if family in (Family.ladder, Family.comb):
        expect(1)
        return GeneratorSpec(family, _parse_size(args[0], True))
    if family == Family.kary:
        expect(2)
        return GeneratorSpec(family,
                             _parse_size(args[1], True),
                             arity=_parse_size(args[0], False))
    if args[:1] == ["linear"]:
        expect(1)
        return GeneratorSpec(family, leg=("linear", None))
    if args[:1] == ["const"]:
        expect(2)
        return GeneratorSpec(family, leg=("const", _parse_size(args[1], False)))
    raise GeneratorSpecError("caterpillar expects 'const:C' or 'linear'")
