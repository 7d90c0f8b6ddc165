"""Spherical data: weight lattice, spherical roots with type classification,
little Weyl group, valuation cone, wavefront test and center."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations

from . import intlinalg as la
from .errors import (
    AmbiguousDecomposition,
    DatumError,
    InconsistentCoroot,
    NoDecomposition,
    TypeNWithoutDouble,
)
from .root_data import (
    BasedRootDatum,
    Lattice,
    WeylGroup,
    generate_group,
    positive_roots,
    root_coordinates,
    validate_finite_type,
)


@dataclass(frozen=True)
class GradedWeight:
    """One (weight, degree, multiplicity) entry of a graded torus
    representation; the weight lives in the cocharacter lattice of the
    spherical Cartan."""

    weight: tuple
    degree: int
    multiplicity: int = 1


@dataclass(frozen=True)
class SphericalDatum:
    """The combinatorial shell of a spherical variety.

    ``lambda_basis`` rows span the weight lattice inside the character
    lattice of the ambient group; spherical roots are stored in ambient
    character coordinates and must be primitive on their rays within the
    root lattice.  ``galois_json`` holds optional Galois-descent data as a
    canonical JSON string so the datum stays hashable.
    """

    group: BasedRootDatum
    lambda_basis: tuple
    spherical_roots: tuple
    parabolic_type: tuple = ()
    whittaker: bool = False
    galois_json: str | None = None
    symplectic_rep: tuple | None = None
    name: str = ""

    def __post_init__(self):
        lat = Lattice.from_rows(self.group.rank, self.lambda_basis)
        object.__setattr__(self, "lambda_basis", tuple(lat.basis))
        if not lat.is_saturated_in_ambient():
            warnings.warn(
                f"weight lattice of {self.name or 'datum'} is not saturated "
                "in the character lattice",
                stacklevel=2,
            )
        for root_name in self.parabolic_type:
            if root_name not in self.group.names:
                raise DatumError(f"unknown simple root name {root_name!r}")
        self._validate()

    @property
    def galois(self) -> dict | None:
        return json.loads(self.galois_json) if self.galois_json else None

    # -- basic lattices -------------------------------------------------------

    @property
    def weight_lattice(self) -> Lattice:
        return Lattice(self.group.rank, self.lambda_basis)

    @property
    def rank(self) -> int:
        """Rank of the spherical Cartan torus."""
        return len(self.lambda_basis)

    def cochar_restriction(self, coroot) -> tuple:
        """Image of an ambient coroot in the cocharacter lattice of the
        spherical Cartan: the pairing functional against the weight
        lattice, in the basis dual to ``lambda_basis``."""
        return tuple(la.dot(b, coroot) for b in self.lambda_basis)

    def root_in_lambda_coords(self, root) -> tuple:
        """Coordinates of a spherical root in the lambda basis (Fractions;
        half-integral entries occur exactly for type-N roots)."""
        coords = self.weight_lattice.coords(root)
        if coords is None:
            raise DatumError(
                f"spherical root {list(root)} is outside the span of the weight lattice"
            )
        return tuple(Fraction(c) for c in coords)

    # -- structural validation ------------------------------------------------

    def _validate(self) -> None:
        root_lattice = Lattice.from_rows(self.group.rank, self.group.simple_roots)
        for a in self.spherical_roots:
            if not root_lattice.contains(a):
                raise DatumError(
                    f"spherical root {list(a)} is not in the root lattice"
                )
            if not _primitive_on_ray(root_lattice, a):
                raise DatumError(
                    f"spherical root {list(a)} is not primitive on its ray"
                )
            self.root_in_lambda_coords(a)
        for root_name in self.parabolic_type:
            idx = self.group.root_index(root_name)
            coroot = self.group.simple_coroots[idx]
            if any(la.dot(b, coroot) != 0 for b in self.lambda_basis):
                raise DatumError(
                    f"weight lattice does not annihilate the coroot of {root_name!r}"
                )
        validate_finite_type(self.spherical_cartan_matrix())

    def spherical_cartan_matrix(self):
        infos = classify_all(self)
        rows = []
        for a in self.spherical_roots:
            row = []
            for info in infos:
                val = _pair_root_cochar(self, a, info.coroot)
                if val.denominator != 1:
                    raise DatumError("spherical Cartan matrix is not integral")
                row.append(int(val))
            rows.append(tuple(row))
        return la.mat(rows)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        data = {
            "group": self.group.to_json(),
            "lambda_X": [list(b) for b in self.lambda_basis],
            "spherical_roots": [
                [int(c) for c in root_coordinates(self.group, a)]
                for a in self.spherical_roots
            ],
            "parabolic_type": list(self.parabolic_type),
            "whittaker": self.whittaker,
        }
        if self.galois_json:
            data["galois"] = json.loads(self.galois_json)
        if self.symplectic_rep is not None:
            data["symplectic_rep"] = [
                {"weight": list(w.weight), "degree": w.degree,
                 "multiplicity": w.multiplicity}
                for w in self.symplectic_rep
            ]
        if self.name:
            data["name"] = self.name
        return data

    @staticmethod
    def from_json(data: dict) -> "SphericalDatum":
        group = BasedRootDatum.from_json(data["group"])
        roots = []
        for coeffs in data.get("spherical_roots", []):
            if len(coeffs) != group.nroots:
                raise DatumError(
                    "spherical root coefficient vector has wrong length"
                )
            v = tuple(
                sum(c * a[j] for c, a in zip(coeffs, group.simple_roots))
                for j in range(group.rank)
            )
            roots.append(v)
        rep = None
        if "symplectic_rep" in data:
            rep = tuple(
                GradedWeight(
                    tuple(int(x) for x in e["weight"]),
                    int(e.get("degree", 1)),
                    int(e.get("multiplicity", 1)),
                )
                for e in data["symplectic_rep"]
            )
        galois = data.get("galois")
        return SphericalDatum(
            group=group,
            lambda_basis=tuple(tuple(int(x) for x in b) for b in data.get("lambda_X", [])),
            spherical_roots=tuple(roots),
            parabolic_type=tuple(data.get("parabolic_type", [])),
            whittaker=bool(data.get("whittaker", False)),
            galois_json=json.dumps(galois, sort_keys=True) if galois else None,
            symplectic_rep=rep,
            name=data.get("name", ""),
        )

    @staticmethod
    def loads(text: str) -> "SphericalDatum":
        return SphericalDatum.from_json(json.loads(text))


def _primitive_on_ray(root_lattice: Lattice, a) -> bool:
    """Is a the first root-lattice point on its ray?"""
    coords = root_lattice.coords(a)
    fr = [Fraction(c) for c in coords]
    from math import lcm

    denom = 1
    for c in fr:
        denom = lcm(denom, c.denominator)
    scaled = [int(c * denom) for c in fr]
    return denom == 1 and la.gcd_list(scaled) == 1


def _pair_root_cochar(d: SphericalDatum, root, cochar) -> Fraction:
    coords = d.root_in_lambda_coords(root)
    if not coords:
        return Fraction(0)
    return sum(c * x for c, x in zip(coords, cochar))


@dataclass(frozen=True)
class SphericalRootInfo:
    root: tuple
    type: str  # "T" | "N" | "G"
    associated_roots: tuple | None
    is_D2: bool
    coroot: tuple


@cache
def classify_all(d: SphericalDatum):
    return tuple(_classify(d, a) for a in d.spherical_roots)


def classify_root(d: SphericalDatum, alpha) -> SphericalRootInfo:
    """Classify a spherical root as T, N or G, with associated roots and
    the Knop D2 flag in the type-G case."""
    alpha = tuple(alpha)
    if alpha not in d.spherical_roots:
        raise DatumError(f"{list(alpha)} is not a spherical root of this datum")
    for info in classify_all(d):
        if info.root == alpha:
            return info
    raise AssertionError("unreachable")


def _classify(d: SphericalDatum, alpha) -> SphericalRootInfo:
    alpha = tuple(alpha)
    pos = positive_roots(d.group)
    pos_map = dict(pos)
    lam = d.weight_lattice
    if alpha in pos_map:
        restriction = d.cochar_restriction(pos_map[alpha])
        if lam.contains(alpha):
            return SphericalRootInfo(alpha, "T", None, False, restriction)
        double = tuple(2 * x for x in alpha)
        if not lam.contains(double):
            raise TypeNWithoutDouble(
                f"{list(alpha)} is a positive root outside the weight lattice "
                "and its double is outside too"
            )
        return SphericalRootInfo(alpha, "N", None, False, restriction)
    # type G: find the strongly orthogonal positive pair summing to alpha
    candidates = []
    roots = [r for r, _ in pos]
    for g1, g2 in combinations(roots, 2):
        if la.add(g1, g2) != alpha:
            continue
        if not _strongly_orthogonal(d.group, g1, g2):
            continue
        if _simple_coroot_difference(d.group, pos_map[g1], pos_map[g2]):
            pair = tuple(sorted((g1, g2)))
            if pair not in candidates:
                candidates.append(pair)
    if not candidates:
        raise NoDecomposition(
            f"{list(alpha)} is neither a positive root nor a sum of two "
            "strongly orthogonal positive roots with the simple-coroot property"
        )
    if len(candidates) > 1:
        raise AmbiguousDecomposition(
            f"{list(alpha)} admits {len(candidates)} admissible decompositions"
        )
    g1, g2 = min(candidates)
    im1 = d.cochar_restriction(pos_map[g1])
    im2 = d.cochar_restriction(pos_map[g2])
    if im1 != im2:
        raise InconsistentCoroot(
            f"associated roots of {list(alpha)} restrict to different coroots"
        )
    simple = set(d.group.simple_roots)
    return SphericalRootInfo(
        alpha, "G", (g1, g2), g1 in simple and g2 in simple, im1
    )


def _strongly_orthogonal(rd: BasedRootDatum, g1, g2) -> bool:
    """(Q g1 + Q g2) meets the root system only in {+-g1, +-g2}."""
    pos = [r for r, _ in positive_roots(rd)]
    allroots = pos + [la.neg(r) for r in pos]
    span = la.transpose(la.mat((g1, g2)))
    for r in allroots:
        if r in (g1, g2, la.neg(g1), la.neg(g2)):
            continue
        if la.solve_rational(span, r) is not None:
            return False
    return True


def _simple_coroot_difference(rd: BasedRootDatum, c1, c2) -> bool:
    """Exists simple coroots d1, d2 with c1 - c2 = d1 - d2."""
    diff = la.sub(c1, c2)
    for d1 in rd.simple_coroots:
        for d2 in rd.simple_coroots:
            if la.sub(d1, d2) == diff:
                return True
    return False


def spherical_coroot(d: SphericalDatum, info: SphericalRootInfo) -> tuple:
    """The coroot in the cocharacter lattice of the spherical Cartan."""
    if info.type == "N":
        raise DatumError("type-N roots do not carry a dual-group coroot")
    return tuple(info.coroot)


def check_coroot_containment(d: SphericalDatum) -> dict:
    """Verify every spherical coroot is the restriction of an ambient
    coroot; report the witnessing positive root per spherical root."""
    witnesses = {}
    ok = True
    pos = positive_roots(d.group)
    for info in classify_all(d):
        found = None
        for root, coroot in pos:
            if d.cochar_restriction(coroot) == tuple(info.coroot):
                found = root
                break
        witnesses[info.root] = found
        if found is None:
            ok = False
    return {"holds": ok, "witnesses": witnesses}


def center(d: SphericalDatum) -> Lattice:
    """Saturated sublattice of the spherical cocharacter lattice killed by
    all spherical roots (cocharacters of the connected-center torus)."""
    n = d.rank
    if not d.spherical_roots:
        return Lattice(n, tuple(tuple(r) for r in la.identity(n)))
    rows = [
        la.clear_denominators(d.root_in_lambda_coords(a))
        for a in d.spherical_roots
    ]
    return Lattice(n, tuple(la.kernel_int(la.mat(rows), n)))


def _reflection_matrix(d: SphericalDatum, root, coroot):
    """s(x) = x - <root, x> coroot on the spherical cocharacter lattice."""
    n = d.rank
    coords = d.root_in_lambda_coords(root)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            val = (1 if i == j else 0) - Fraction(coroot[i]) * coords[j]
            if val.denominator != 1:
                raise DatumError("spherical reflection is not integral")
            row.append(int(val))
        rows.append(tuple(row))
    return la.mat(rows)


@cache
def little_weyl_group(d: SphericalDatum, cap: int = 10**7) -> WeylGroup:
    """Reflection group generated by the spherical-root reflections on the
    cocharacter space of the spherical Cartan."""
    gens = tuple(
        _reflection_matrix(d, info.root, info.coroot) for info in classify_all(d)
    )
    return generate_group(gens, cap, ambient_rank=d.rank)


def _lambda_side_action(matrix_on_cochar, n):
    """Action on weight-lattice coordinates: inverse transpose."""
    if n == 0:
        return ()
    return la.transpose(la.invert_unimodular(matrix_on_cochar))


def valuation_cone(d: SphericalDatum) -> dict:
    """The cone {x : <alpha, x> <= 0 for all spherical roots} in spherical
    cocharacter coordinates.

    Returned as a dict with the defining functionals (the roots, to be
    paired <= 0), extreme rays modulo lineality, and a lineality basis;
    the cone is not strongly convex whenever the center has positive
    rank.
    """
    from .cones import rays_of_hform

    n = d.rank
    root_functionals = [
        la.clear_denominators(d.root_in_lambda_coords(a))
        for a in d.spherical_roots
    ]
    lineality = (
        la.kernel_int(la.mat(root_functionals), n)
        if root_functionals
        else [tuple(r) for r in la.identity(n)]
    )
    if root_functionals:
        # rays of the pointed part: cut by the orthogonal complement of
        # the lineality space
        rays = rays_of_hform(
            n, [list(v) for v in lineality],
            [la.neg(f) for f in root_functionals],
        )
    else:
        rays = []
    return {
        "root_functionals": tuple(root_functionals),
        "rays": tuple(rays),
        "lineality": tuple(lineality),
    }


def in_valuation_cone(d: SphericalDatum, x) -> bool:
    return all(
        _pair_root_cochar(d, a, x) <= 0 for a in d.spherical_roots
    )


def negative_chamber_image(d: SphericalDatum) -> dict:
    """Generators (rays + lineality) of the image of the ambient negative
    Weyl chamber under the projection to the spherical cocharacter
    space."""
    from .cones import rays_of_hform

    rd = d.group
    n_amb = rd.rank
    simple = [tuple(a) for a in rd.simple_roots]
    lineality = (
        la.kernel_int(la.mat(simple), n_amb)
        if simple
        else [tuple(r) for r in la.identity(n_amb)]
    )
    rays = (
        rays_of_hform(n_amb, [list(v) for v in lineality],
                      [la.neg(a) for a in simple])
        if simple
        else []
    )
    return {
        "rays": tuple(d.cochar_restriction(r) for r in rays),
        "lineality": tuple(d.cochar_restriction(v) for v in lineality),
    }


def wavefront(d: SphericalDatum) -> bool:
    """Does the valuation cone equal the image of the negative chamber?

    The containment image(A^-) inside A_X^- always holds and is asserted;
    equality is decided by mutual containment on generating sets.
    """
    from .cones import cone_contains

    val = valuation_cone(d)
    img = negative_chamber_image(d)
    image_gens = (
        list(img["rays"])
        + [tuple(v) for v in img["lineality"]]
        + [la.neg(v) for v in img["lineality"]]
    )
    for x in image_gens:
        if not in_valuation_cone(d, x):
            raise DatumError(
                "image of the negative chamber escapes the valuation cone"
            )
    targets = (
        list(val["rays"])
        + [tuple(v) for v in val["lineality"]]
        + [la.neg(v) for v in val["lineality"]]
    )
    return all(cone_contains(image_gens, t) for t in targets)


# -- Weyl-group combinatorics on subsets of spherical roots -------------------

def wx_theta_omega(d: SphericalDatum, theta, omega,
                   weyl: WeylGroup | None = None):
    """Little-Weyl elements carrying the subset theta onto omega."""
    theta = _as_root_subset(d, theta)
    omega = _as_root_subset(d, omega)
    weyl = weyl if weyl is not None else little_weyl_group(d)
    n = d.rank
    theta_coords = [d.root_in_lambda_coords(a) for a in theta]
    omega_set = {tuple(d.root_in_lambda_coords(a)) for a in omega}
    out = []
    for m in weyl.elements:
        act = _lambda_side_action(m, n)
        image = {tuple(la.mat_vec(act, c)) if n else () for c in theta_coords}
        if image == omega_set:
            out.append(m)
    return sorted(out, key=lambda m: (weyl.elements[m], m))


def wx_theta(d: SphericalDatum, theta, weyl: WeylGroup | None = None) -> dict:
    """Minimal-length coset representatives modulo the parabolic subgroup
    of theta, together with the union over omega of the conjugation sets.

    The two lists agree exactly when every minimal representative carries
    theta onto another subset of the simple spherical roots.
    """
    theta = _as_root_subset(d, theta)
    weyl = weyl if weyl is not None else little_weyl_group(d)
    n = d.rank
    infos = {info.root: info for info in classify_all(d)}
    gens = tuple(
        _reflection_matrix(d, a, infos[a].coroot) for a in theta
    )
    parabolic_elements = (
        set(generate_group(gens, ambient_rank=n).elements)
        if gens else {la.identity(n)}
    )
    cosets = {}
    for m, length in weyl.elements.items():
        key = frozenset(la.mat_mul(m, p) for p in parabolic_elements)
        if key not in cosets or weyl.elements[cosets[key]] > length:
            cosets[key] = m
    reps = sorted(cosets.values(), key=lambda m: (weyl.elements[m], m))
    union = []
    for omega in _all_subsets(d.spherical_roots):
        union.extend(wx_theta_omega(d, theta, omega, weyl))
    return {
        "min_length_representatives": reps,
        "conjugation_union": sorted(union, key=lambda m: (weyl.elements[m], m)),
    }


def _as_root_subset(d: SphericalDatum, subset):
    out = []
    for a in subset:
        a = tuple(a)
        if a not in d.spherical_roots:
            raise DatumError(f"{list(a)} is not a spherical root")
        out.append(a)
    return tuple(out)


def _all_subsets(items):
    items = list(items)
    out = []
    for k in range(len(items) + 1):
        out.extend(combinations(items, k))
    return out
