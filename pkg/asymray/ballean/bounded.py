"""Uniformly bounded families in ball structures and graph truncations."""

import logging
from collections import namedtuple

from ..graph.truncation import MarginError

logger = logging.getLogger(__name__)

#: Every member F_i of the family lies in B(centers[i], radii[i]), and every
#: radius is at most ``alpha``.
BoundedFamilyCertificate = namedtuple("BoundedFamilyCertificate",
                                      ["alpha", "centers", "radii"])

#: Per-member radii of a family that is not bounded at the explored scale;
#: ``radii`` holds None for members no ball contains.
UnboundedFamilyReport = namedtuple("UnboundedFamilyReport", ["radii", "centers"])


def bounded_at_scale(sequence):
    """Whether a finite prefix of a per-index sequence looks bounded.

    Bounded iff the maximum is already attained among the indices
    0..len/2. This is the only rule used to turn a prefix into a
    bounded/diverging verdict.
    """
    sequence = list(sequence)
    if not sequence:
        return True
    return max(sequence) == max(sequence[:len(sequence) // 2 + 1])


def family_radius(space, family):
    """Least common radius of a family of sets.

    ``space`` is a :class:`~asymray.ballean.structure.BallStructure`, a
    :class:`~asymray.graph.truncation.Truncation` or a
    :class:`~asymray.graph.ray_prefix.RayPrefix`; anything with
    ``member_radius`` and ``finite`` will do.

    Candidate centres range over the whole space; ties go to the least
    centre. In a finite space the family is bounded iff every member lies in
    some ball. Otherwise the per-member radii are judged with
    :func:`bounded_at_scale`.

    :returns: :data:`BoundedFamilyCertificate` or :data:`UnboundedFamilyReport`
    """
    radii, centers = [], []
    for i, member in enumerate(family):
        try:
            radius, center = space.member_radius(member)
        except MarginError as e:
            raise MarginError("family member {}: {}".format(i, e)) from e
        radii.append(radius)
        centers.append(center)
        logger.debug("member %d: radius %s around %s", i, radius, center)

    if any(r is None for r in radii):
        return UnboundedFamilyReport(radii, centers)
    order = getattr(space, "radii", None)
    key = order.index if order is not None else None
    if not space.finite and not bounded_at_scale([key(r) if key else r for r in radii]):
        return UnboundedFamilyReport(radii, centers)
    alpha = max(radii, key=key) if radii else 0
    return BoundedFamilyCertificate(alpha, centers, radii)
