"""
Certificate documents: the machine-readable record of one command run.

Documents are plain nested dictionaries of strings, numbers, booleans, lists
and None. JSON output uses sorted keys and a two-space indent, so identical
runs give byte-identical files. The field list of schema version 1 is
documented in docs/schema.rst.
"""

import json

from .ballean.structure import PROPERTIES
from .ray.certify import RayCertificate

SCHEMA_VERSION = "1"

ASYMPTOTIC_RAY = "asymptotic-ray"
REFUTED = "refuted"
BOUNDED = "bounded"
ASYMORPHIC = "asymorphic"
NOT_ASYMORPHIC = "not-asymorphic"
LIPSCHITZ = "lipschitz"
BALLEAN = "ballean"
NOT_BALLEAN = "not-ballean"

#: Assignment entries kept in the witnesses of a certificate
ASSIGNMENT_SAMPLES = 20


class CertificateDocument:
    def __init__(self, command, echo, verdict, constants, witnesses, scope):
        self.fields = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "input": dict(echo),
            "verdict": verdict,
            "constants": dict(constants),
            "witnesses": dict(witnesses),
            "scope": dict(scope),
        }

    @property
    def verdict(self):
        return self.fields["verdict"]

    def to_json(self):
        return json.dumps(self.fields, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        fields = json.loads(text)
        doc = cls.__new__(cls)
        doc.fields = fields
        return doc

    def to_text(self):
        lines = []
        _flatten(self.fields, "", lines)
        return "\n".join(lines) + "\n"

    def render(self, fmt):
        return self.to_json() if fmt == "json" else self.to_text()


def _flatten(value, prefix, lines):
    if isinstance(value, dict):
        for key in sorted(value):
            _flatten(value[key], "{}.{}".format(prefix, key) if prefix else key, lines)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, item in enumerate(value):
            _flatten(item, "{}[{}]".format(prefix, i), lines)
    elif isinstance(value, list):
        lines.append("{}: {}".format(prefix, " ".join(_scalar(v) for v in value)))
    else:
        lines.append("{}: {}".format(prefix, _scalar(value)))


def _scalar(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _scope(kind, depth=None, margin=None):
    return {"kind": kind, "depth": depth, "margin": margin}


def ray_document(echo, result, tree=None):
    """Document for :func:`~asymray.ray.certify.certify_ray`, optionally
    joined with the tree criterion"""
    constants = {}
    witnesses = {}
    if isinstance(result, RayCertificate):
        verdict = ASYMPTOTIC_RAY
        constants.update(r=result.r, alpha=result.alpha, forward_m=result.forward_m,
                         inverse_m=result.inverse_m, max_degree=result.max_degree,
                         degree_bound=result.degree_bound)
        if result.segment is not None:
            constants.update(segment_k=result.segment.k, segment_r=result.segment.r_prime)
        witnesses.update(
            arrow=list(result.arrow),
            cover_radii=list(result.cover.per_layer),
            sphere_radii=list(result.sphere.per_layer),
            sphere_centers=list(result.sphere.witnesses),
            assignment=[[v, n] for v, n in sorted(result.cover.witnesses.items())
                        ][:ASSIGNMENT_SAMPLES],
            observed=dict(result.observed),
        )
    else:
        verdict = REFUTED
        witnesses.update(evidence=result.evidence, sequence=list(result.sequence),
                         vertices=_plain(result.witnesses), exact=result.exact)
    if tree is not None:
        constants.update(t=tree.t, s=tree.s)
        witnesses.update(component_sizes=list(tree.sizes),
                         component_exact=list(tree.exact),
                         size_profile=list(tree.profile),
                         tree_verdict=ASYMPTOTIC_RAY if tree.asymptotic_ray else REFUTED,
                         ball_checks=[list(c) for c in tree.bound_checks])
    return CertificateDocument("analyze", echo, verdict, constants, witnesses,
                               _scope(result.verdict_scope, result.depth, result.margin))


def bounded_document(echo, t, classification=None):
    """Document for a finite input, optionally compared with a second one"""
    constants = {
        "vertices": len(t),
        "diameter": t.diameter(),
        "max_degree": t.max_degree(),
    }
    witnesses = {}
    verdict = BOUNDED
    if classification is not None:
        verdict = ASYMORPHIC if classification.asymorphic else NOT_ASYMORPHIC
        constants.update(sizes=list(classification.sizes),
                         diameters=list(classification.diameters),
                         forward_m=classification.forward_m,
                         inverse_m=classification.inverse_m)
        if classification.witness is not None:
            witnesses["bijection"] = [list(p) for p in classification.witness.items()]
    return CertificateDocument("analyze", echo, verdict, constants, witnesses,
                               _scope("exact", t.depth, 0))


def map_document(echo, report, asymorphism=None, profile=None, scope=None):
    """Document for check-map"""
    constants = {
        "edge_constant": report.edge_constant,
        "global_constant": report.global_constant,
    }
    witnesses = {"edge": _plain(report.witness_edge)}
    if asymorphism is not None:
        constants.update(forward_m=asymorphism.forward_m, inverse_m=asymorphism.inverse_m)
        witnesses.update(inverse_edge=_plain(asymorphism.inverse_witness),
                         forward_profile=list(asymorphism.forward_profile),
                         inverse_profile=list(asymorphism.inverse_profile))
    if profile is not None:
        witnesses["ball_profile"] = [list(p) for p in profile]
    if asymorphism is None:
        verdict = LIPSCHITZ
    else:
        verdict = ASYMORPHIC if asymorphism.is_asymorphism else NOT_ASYMORPHIC
    return CertificateDocument("check-map", echo, verdict, constants, witnesses,
                               scope or _scope("exact"))


def axioms_document(echo, report, size):
    constants = {name: getattr(report, name) for name in PROPERTIES}
    constants["is_ballean"] = report.is_ballean
    witnesses = {}
    for name in PROPERTIES:
        witnesses[name] = [{
            "alpha": a,
            "beta": b,
            "witness": _plain(w)
        } for (a, b), w in sorted(report.witnesses[name].items())]
    counterexamples = {}
    for name, (a, b, x) in sorted(report.counterexamples.items()):
        counterexamples[name] = {"alpha": a, "beta": b, "x": x}
    witnesses["counterexamples"] = counterexamples
    verdict = BALLEAN if report.is_ballean else NOT_BALLEAN
    return CertificateDocument("axioms", echo, verdict, constants, witnesses,
                               _scope("exact", size, 0))


def decompose_document(echo, decomposition, verdict, scope_kind="prefix"):
    witnesses = {
        "arrow": list(decomposition.arrow),
        "components": [sorted(c) for c in decomposition.components],
        "component_exact": list(decomposition.exact),
        "size_profile": list(verdict.profile),
    }
    constants = {"t": verdict.t, "s": verdict.s}
    t = decomposition.truncation
    return CertificateDocument("decompose", echo,
                               ASYMPTOTIC_RAY if verdict.asymptotic_ray else REFUTED, constants,
                               witnesses, _scope(scope_kind, t.depth, 0))


def _plain(value):
    """Tuples to lists, recursively"""
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
