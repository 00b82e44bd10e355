"""Exact-arithmetic toolkit for hyperbolic isometries over totally real fields.

Thin wrapper over the ``_hypsys`` extension module.  Structured values cross
the C++ boundary as JSON text; this package converts them to and from dicts.

Conventions (shared with the ``hypsys`` CLI):
  * rationals are ``"p/q"`` strings (``"p"`` when the denominator is 1);
  * polynomials are coefficient lists with the constant term LAST;
  * field elements are a rational string or ``{"coeffs": [c0, c1, ...]}`` in
    increasing powers of the field generator;
  * fields are ``{"min_poly": [...], "identity_embedding": index}`` with the
    index counting real roots in increasing order, or ``None`` for Q.
"""

import json as _json

from ._hypsys import HypsysError  # noqa: F401
from . import _hypsys as _core

__all__ = [
    "HypsysError",
    "field_make",
    "compositum",
    "form_check",
    "form_diagonalize",
    "plane_relation",
    "classify",
    "translation_length",
    "holonomy",
    "approximate",
    "infinite_holonomy_example",
    "schottky_certify",
    "schottky_spectrum",
    "cyclic_datum",
    "salem_check",
    "salem_build",
    "angle_grid",
]


def _poly_arg(poly):
    """Accept a coefficient list (constant term last) or a CSV string."""
    if isinstance(poly, str):
        return poly
    return ",".join(str(c) for c in poly)


def field_make(poly, digits=30):
    """Totally real number field from minimal-polynomial coefficients."""
    return _json.loads(_core.field_make(_poly_arg(poly), digits))


def compositum(poly1, poly2):
    """Compositum of two totally real fields with both generator images."""
    return _json.loads(_core.compositum(_poly_arg(poly1), _poly_arg(poly2)))


def form_check(form):
    """Admissibility report and isotropy class of a quadratic form."""
    return _json.loads(_core.form_check(_json.dumps(form)))


def form_diagonalize(form):
    """Exact congruence diagonalization: S^t * gram * S = diag(D)."""
    return _json.loads(_core.form_diagonalize(_json.dumps(form)))


def plane_relation(form, normal1, normal2, digits=30):
    """Intersecting / asymptotic / ultraparallel, with certified distance."""
    payload = {"form": form, "normal1": normal1, "normal2": normal2}
    return _json.loads(_core.plane_relation(_json.dumps(payload), digits))


def classify(iso):
    """'identity', 'elliptic', 'parabolic' or 'loxodromic'."""
    return _core.iso_classify(_json.dumps(iso))


def translation_length(iso, digits=30):
    """Certified enclosure of the translation length of a loxodromic."""
    return _json.loads(_core.iso_length(_json.dumps(iso), digits))


def holonomy(iso, digits=30):
    """Rotation angles with exact certificates, plus the holonomy order."""
    return _json.loads(_core.iso_holonomy(_json.dumps(iso), digits))


def approximate(form, target, eps="1/1000000"):
    """Exact isometry within eps (entrywise) of a real orthochronous target."""
    payload = {"form": form, "target": [[str(x) for x in row] for row in target]}
    return _json.loads(_core.iso_approximate(_json.dumps(payload), str(eps)))


def infinite_holonomy_example(d, eps="0.001", digits=30):
    """Loxodromic with infinite-order holonomy and translation length < eps."""
    return _json.loads(_core.infinite_holonomy_example(d, str(eps), digits))


def schottky_certify(instance, digits=30):
    """Certify a generating datum (ping-pong with pairwise disjoint half-spaces)."""
    return _json.loads(_core.schottky_certify(_json.dumps(instance), digits))


def schottky_spectrum(instance, cutoff=6, digits=30):
    """Certified bottom of the length spectrum up to the word-length cutoff."""
    return _json.loads(_core.schottky_spectrum(_json.dumps(instance), cutoff, digits))


def cyclic_datum(iso):
    """Rank-1 generating datum for a loxodromic isometry."""
    return _json.loads(_core.cyclic_datum(_json.dumps(iso)))


def salem_check(poly, digits=30):
    """Salem test with a certified enclosure of the Salem number."""
    return _json.loads(_core.salem_check(_poly_arg(poly), digits))


def salem_build(poly, angles=(), d=3, digits=30):
    """Arithmetic loxodromic realizing a Salem length and rational angles.

    ``angles`` is a sequence of fractions of a full turn, e.g. ``["1/3"]``.
    """
    return _json.loads(
        _core.salem_build(_poly_arg(poly), ",".join(str(a) for a in angles), d, digits)
    )


def angle_grid(d, delta):
    """Rational-angle tuples forming a delta-net for the holonomy pseudometric."""
    return _json.loads(_core.angle_grid(d, str(delta)))
