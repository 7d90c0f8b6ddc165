"""Boundary degenerations, fans in the spherical cocharacter space, and
toroidal-compactification combinatorics."""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import intlinalg as la
from .cones import Cone, Fan, fan_covers, smooth_subdivision as _smooth_subdivision
from .errors import DatumError, NotSmoothCone, NotWavefront
from .root_data import Lattice, root_coordinates
from .spherical import SphericalDatum, center, wavefront


@dataclass(frozen=True)
class BoundaryDatum:
    """The boundary degeneration attached to a subset of the spherical
    roots: same weight lattice and parabolic type, spherical roots cut to
    the subset, center enlarged to the annihilator of the subset."""

    theta: tuple
    datum: SphericalDatum
    center_lattice: Lattice


def boundary_degeneration(d: SphericalDatum, theta) -> BoundaryDatum:
    theta = tuple(tuple(a) for a in theta)
    for a in theta:
        if a not in d.spherical_roots:
            raise DatumError(f"{list(a)} is not a spherical root")
    sub = SphericalDatum(
        group=d.group,
        lambda_basis=d.lambda_basis,
        spherical_roots=theta,
        parabolic_type=d.parabolic_type,
        whittaker=d.whittaker,
        galois_json=None,
        symplectic_rep=None,
        name=f"{d.name}|{sorted(map(list, theta))}" if d.name else "",
    )
    return BoundaryDatum(theta=theta, datum=sub, center_lattice=center(sub))


def transitivity_check(d: SphericalDatum) -> bool:
    """(X_Theta)_Omega = X_Omega for all Omega inside Theta, field by
    field."""
    roots = list(d.spherical_roots)
    subsets = _subsets(roots)
    for theta in subsets:
        mid = boundary_degeneration(d, theta)
        for omega in _subsets(list(theta)):
            twice = boundary_degeneration(mid.datum, omega)
            once = boundary_degeneration(d, omega)
            if sorted(twice.datum.spherical_roots) != sorted(once.datum.spherical_roots):
                return False
            if twice.datum.lambda_basis != once.datum.lambda_basis:
                return False
            if twice.datum.parabolic_type != once.datum.parabolic_type:
                return False
            if twice.center_lattice.basis != once.center_lattice.basis:
                return False
    return True


def _subsets(items):
    from itertools import combinations

    out = []
    for k in range(len(items) + 1):
        out.extend(tuple(c) for c in combinations(items, k))
    return out


# -- fans in the positive valuation chamber -----------------------------------

def positive_chamber_hform(d: SphericalDatum):
    """H-form of A_X^+ = -A_X^-: functionals to be paired >= 0."""
    return [
        la.clear_denominators(d.root_in_lambda_coords(a))
        for a in d.spherical_roots
    ]


def fan_from_json(d: SphericalDatum, data: dict, validate: bool = True) -> Fan:
    cones = data.get("cones", [])
    return Fan.make(d.rank, [list(map(tuple, c)) for c in cones], validate=validate)


def fan_validate(d: SphericalDatum, fan: Fan) -> dict:
    """Full fan report: face axioms, containment in A_X^+, smoothness and
    completeness."""
    fan.validate()
    ineqs = positive_chamber_hform(d)
    outside = []
    for c in fan.maximal_cones:
        for g in c.generators:
            if any(la.dot(a, g) < 0 for a in ineqs):
                outside.append(list(g))
    return {
        "well_formed": True,
        "inside_positive_chamber": not outside,
        "violations": outside,
        "smooth": fan.is_smooth(),
        "complete": fan_is_complete(d, fan),
    }


def fan_is_smooth(fan: Fan) -> bool:
    return fan.is_smooth()


def fan_is_complete(d: SphericalDatum, fan: Fan) -> bool:
    """Support equals all of A_X^+ (relative completeness)."""
    return fan_covers(fan, [], positive_chamber_hform(d))


def smooth_subdivision(d: SphericalDatum, fan: Fan) -> Fan:
    return _smooth_subdivision(fan)


# -- orbits and tori -----------------------------------------------------------

@dataclass(frozen=True)
class OrbitPoset:
    """Orbit closures of a toroidal compactification, anti-isomorphic to
    the face poset of the fan."""

    cones: tuple
    theta_labels: tuple
    closure_order: tuple  # pairs (i, j) meaning Z_i contains Z_j
    ray_indices: tuple
    divisor_relations: tuple  # per cone index, the ray indices whose divisors cut it


def theta_face_label(d: SphericalDatum, cone: Cone) -> tuple:
    """Spherical roots orthogonal to the cone (the Theta-face label)."""
    out = []
    for a in d.spherical_roots:
        coords = la.clear_denominators(d.root_in_lambda_coords(a))
        if all(la.dot(coords, g) == 0 for g in cone.generators):
            out.append(a)
    return tuple(out)


def orbit_poset(d: SphericalDatum, fan: Fan) -> OrbitPoset:
    cones = tuple(sorted(fan.cones, key=lambda c: (c.dim, c.generators)))
    labels = tuple(theta_face_label(d, c) for c in cones)
    order = []
    for i, ci in enumerate(cones):
        for j, cj in enumerate(cones):
            if i != j and cj.has_face(ci):
                # ci face of cj: orbit closure Z_{ci} contains Z_{cj}
                order.append((i, j))
    rays = tuple(i for i, c in enumerate(cones) if c.dim == 1)
    relations = []
    for i, c in enumerate(cones):
        cut = tuple(
            r for r in rays
            if all(c.contains(g) for g in cones[r].generators)
        )
        relations.append(cut)
    return OrbitPoset(cones, labels, tuple(order), rays, tuple(relations))


def torus_of_cone(d: SphericalDatum, cone: Cone) -> dict:
    """The subtorus lattice attached to a smooth cone together with the
    primitive generators realizing its coordinate parametrization."""
    if not cone.is_smooth():
        raise NotSmoothCone(
            f"cone {list(map(list, cone.generators))} is not smooth"
        )
    lat = Lattice.from_rows(d.rank, cone.generators).saturation()
    return {
        "lattice": lat,
        "rank": lat.rank,
        "generators": cone.generators,
    }


def wavefront_parabolic(d: SphericalDatum, theta) -> tuple:
    """Simple roots of the parabolic attached to a boundary degeneration
    of a wavefront datum: the support of theta joined with the parabolic
    type."""
    if not wavefront(d):
        raise NotWavefront(f"datum {d.name or ''} is not wavefront")
    theta = tuple(tuple(a) for a in theta)
    support = set()
    for a in theta:
        if a not in d.spherical_roots:
            raise DatumError(f"{list(a)} is not a spherical root")
        coords = root_coordinates(d.group, a)
        for c, name in zip(coords, d.group.names):
            if c != 0:
                support.add(name)
    support.update(d.parabolic_type)
    return tuple(sorted(support, key=d.group.names.index))
