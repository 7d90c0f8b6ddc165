"""Exact rational polyhedral cones and fans.

Cones are stored by primitive integer ray generators; all conversions
between generator and inequality descriptions enumerate small subsets,
which is robust and exact for the ranks (<= 4) this package works in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import intlinalg as la
from .errors import DatumError, MalformedFan, NotSmoothCone


def _nonneg_kernel_ray(columns, require_positive_at=None):
    """A nonzero x >= 0 with sum x_i * col_i = 0, or None.

    If ``require_positive_at`` is given, only solutions with that
    coordinate strictly positive count.  Searches supports of size up to
    rank+1, which suffices for extreme rays of {x >= 0 : Mx = 0}.
    """
    ncols = len(columns)
    if ncols == 0:
        return None
    m = la.mat(la.transpose(columns))  # rows = coordinates, cols = variables
    r = la.rank(columns)
    for size in range(1, min(ncols, r + 1) + 1):
        for support in combinations(range(ncols), size):
            if require_positive_at is not None and require_positive_at not in support:
                continue
            sub = la.mat(tuple(row[j] for j in support) for row in m)
            kern = la.nullspace_rational(sub, size)
            if len(kern) != 1:
                continue
            v = kern[0]
            if all(x > 0 for x in v):
                pass
            elif all(x < 0 for x in v):
                v = tuple(-x for x in v)
            else:
                continue
            full = [Fraction(0)] * ncols
            for j, x in zip(support, v):
                full[j] = x
            return tuple(full)
    return None


def cone_contains(generators, x) -> bool:
    """Is x a nonnegative rational combination of the generators?"""
    if la.is_zero(x):
        return True
    if not generators:
        return False
    cols = list(generators) + [tuple(-c for c in x)]
    ray = _nonneg_kernel_ray(cols, require_positive_at=len(cols) - 1)
    return ray is not None


def is_pointed(generators) -> bool:
    gens = [g for g in generators if not la.is_zero(g)]
    if not gens:
        return True
    return _nonneg_kernel_ray(gens) is None


def extremal_generators(generators):
    """Drop generators that are nonnegative combinations of the others."""
    gens = []
    seen = set()
    for g in generators:
        if la.is_zero(g):
            continue
        p = la.primitive(g)
        if p not in seen:
            seen.add(p)
            gens.append(p)
    keep = list(gens)
    for g in list(keep):
        others = [h for h in keep if h != g]
        if cone_contains(others, g):
            keep.remove(g)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class Cone:
    """Strongly convex rational polyhedral cone, by primitive extremal
    generators (sorted, deduplicated)."""

    ambient: int
    generators: tuple

    @staticmethod
    def make(ambient: int, generators) -> "Cone":
        gens = extremal_generators(tuple(tuple(int(x) for x in g) for g in generators))
        for g in gens:
            if len(g) != ambient:
                raise DatumError("generator of wrong dimension")
        if not is_pointed(gens):
            raise DatumError(f"cone {list(map(list, gens))} is not strongly convex")
        return Cone(ambient, gens)

    @property
    def dim(self) -> int:
        return la.rank(self.generators) if self.generators else 0

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, x) -> bool:
        return cone_contains(self.generators, x)

    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    def multiplicity(self) -> int:
        """Index of the generator lattice in its saturation (simplicial
        cones only)."""
        if not self.is_simplicial():
            raise NotSmoothCone("multiplicity needs a simplicial cone")
        if not self.generators:
            return 1
        return la.sat_index(self.generators, self.ambient)

    def is_smooth(self) -> bool:
        """Generators extend to a lattice basis."""
        return self.is_simplicial() and (self.is_zero() or self.multiplicity() == 1)

    def span_basis(self):
        return la.saturate(self.generators, self.ambient) if self.generators else []

    def facet_normals(self):
        """Inward facet normals relative to the span, as primitive ambient
        integer functionals (vanishing identically on nothing outside)."""
        d = self.dim
        if d == 0:
            return ()
        span = self.span_basis()
        coords = [la.lattice_coords(span, g) for g in self.generators]
        coords = [tuple(c) for c in coords]
        normals = set()
        if d == 1:
            # single facet {0}; inward normal pairs positively with the ray
            normals.add((Fraction(1),))
        else:
            for subset in combinations(range(len(coords)), d - 1):
                sub = la.mat(coords[i] for i in subset)
                if la.rank(sub) != d - 1:
                    continue
                kern = la.nullspace_rational(sub, d)
                if len(kern) != 1:
                    continue
                n = kern[0]
                signs = [la.dot(n, c) for c in coords]
                if all(s >= 0 for s in signs):
                    normals.add(tuple(n))
                elif all(s <= 0 for s in signs):
                    normals.add(tuple(-x for x in n))
        # lift span-coordinates functionals to ambient integer functionals
        lifted = []
        span_m = la.mat(span)
        gram = la.mat_mul(span_m, la.transpose(span_m))
        for n in sorted(normals):
            c = la.solve_rational(gram, n)
            amb = tuple(sum(ci * row[j] for ci, row in zip(c, span)) for j in range(self.ambient))
            lifted.append(la.clear_denominators(amb))
        return tuple(sorted(set(lifted)))

    def faces(self):
        """All faces (including 0 and the cone itself), as Cones."""
        if self.is_zero():
            return (self,)
        result = {self.generators: self}
        zero = Cone(self.ambient, ())
        result[()] = zero
        normals = self.facet_normals()
        for k in range(1, len(normals) + 1):
            for sel in combinations(normals, k):
                gens = tuple(
                    g for g in self.generators
                    if all(la.dot(n, g) == 0 for n in sel)
                )
                if gens not in result:
                    result[gens] = Cone(self.ambient, gens)
        return tuple(result.values())

    def has_face(self, other: "Cone") -> bool:
        """Is ``other`` a face of this cone?"""
        if other.is_zero():
            return True
        for g in other.generators:
            if not self.contains(g):
                return False
        normals = self.facet_normals()
        vanishing = [
            n for n in normals
            if all(la.dot(n, g) == 0 for g in other.generators)
        ]
        # the perp of the span also vanishes on lower-dimensional faces
        span = self.span_basis()
        face_gens = tuple(
            g for g in self.generators
            if all(la.dot(n, g) == 0 for n in vanishing)
        )
        face = Cone(self.ambient, face_gens)
        if face.dim != other.dim:
            return False
        return all(face.contains(g) for g in other.generators) and all(
            other.contains(g) for g in face.generators
        )

    def intersect(self, other: "Cone") -> "Cone":
        """Exact intersection of two strongly convex cones."""
        if self.is_zero() or other.is_zero():
            return Cone(self.ambient, ())
        eqs = []
        for cone in (self, other):
            span = cone.span_basis()
            for v in la.nullspace_rational(span, self.ambient):
                eqs.append(la.clear_denominators(v))
        ineqs = list(self.facet_normals()) + list(other.facet_normals())
        gens = rays_of_hform(self.ambient, eqs, ineqs)
        gens = [g for g in gens if self.contains(g) and other.contains(g)]
        return Cone.make(self.ambient, gens)


def rays_of_hform(ambient: int, equations, inequalities):
    """Extreme rays of {x : E x = 0, A x >= 0} assuming the result is
    pointed (true for intersections of strongly convex cones)."""
    span = la.kernel_int(la.mat(equations), ambient) if equations else [
        tuple(row) for row in la.identity(ambient)
    ]
    d = len(span)
    if d == 0:
        return []
    # restrict inequalities to span coordinates
    restr = [tuple(la.dot(a, b) for b in span) for a in inequalities]
    rays = set()
    if d == 1:
        for sign in (1, -1):
            v = tuple(sign * x for x in (1,))
            if all(la.dot(a, v) >= 0 for a in restr):
                rays.add(v)
    else:
        for subset in combinations(range(len(restr)), d - 1):
            sub = la.mat(restr[i] for i in subset)
            if la.rank(sub) != d - 1:
                continue
            kern = la.nullspace_rational(sub, d)
            if len(kern) != 1:
                continue
            for cand in (kern[0], tuple(-x for x in kern[0])):
                if all(la.dot(a, cand) >= 0 for a in restr):
                    rays.add(la.clear_denominators(cand))
    out = []
    for r in sorted(rays):
        amb = tuple(sum(ri * b[j] for ri, b in zip(r, span)) for j in range(ambient))
        out.append(la.primitive(amb))
    return sorted(set(out))


@dataclass(frozen=True)
class Fan:
    """Finite fan: cones pairwise intersecting in common faces, closed
    under faces."""

    ambient: int
    maximal_cones: tuple
    cones: tuple

    @staticmethod
    def make(ambient: int, maximal_generators, validate: bool = True) -> "Fan":
        maximal = []
        seen = set()
        for gens in maximal_generators:
            c = Cone.make(ambient, gens)
            if c.generators not in seen:
                seen.add(c.generators)
                maximal.append(c)
        all_cones = {}
        for c in maximal:
            for f in c.faces():
                all_cones[f.generators] = f
        if not maximal:
            zero = Cone(ambient, ())
            all_cones[()] = zero
            maximal = [zero]
        fan = Fan(ambient, tuple(maximal), tuple(all_cones.values()))
        if validate:
            fan.validate()
        return fan

    def validate(self) -> None:
        for i, c in enumerate(self.cones):
            for d in self.cones[i + 1:]:
                inter = c.intersect(d)
                if not (c.has_face(inter) and d.has_face(inter)):
                    raise MalformedFan(
                        f"cones {list(map(list, c.generators))} and "
                        f"{list(map(list, d.generators))} do not meet in a common face"
                    )

    def rays(self):
        out = set()
        for c in self.maximal_cones:
            out.update(c.generators)
        return tuple(sorted(out))

    def is_smooth(self) -> bool:
        return all(c.is_smooth() for c in self.maximal_cones)

    def support_contains(self, x) -> bool:
        return any(c.contains(x) for c in self.maximal_cones)


# -- completeness relative to a support cone ---------------------------------

def fan_covers(fan: Fan, equations, inequalities) -> bool:
    """Does the fan's support equal K = {x : Ex = 0, Ax >= 0}?

    Recursive facet-coverage check with exact arithmetic: interior walls
    must be two-sided, boundary walls must recursively cover the facets
    of K.
    """
    return _covers(fan.ambient, [c for c in fan.cones], equations, inequalities)


def _span_dim(ambient, equations):
    if not equations:
        return ambient
    return len(la.nullspace_rational(la.mat(equations), ambient))


def _covers(ambient, cones, equations, inequalities) -> bool:
    equations = [e for e in equations if not la.is_zero(e)]
    # drop inequalities that vanish identically on the span of K
    span_basis = (
        la.kernel_int(la.mat(equations), ambient)
        if equations
        else [tuple(r) for r in la.identity(ambient)]
    )
    live_ineqs = [
        a for a in inequalities
        if any(la.dot(a, b) != 0 for b in span_basis)
    ]
    d = len(span_basis)
    cones = [c for c in cones if _inside_k(c, equations, live_ineqs)]
    if d == 0:
        return True  # K = {0}, always covered by the zero cone
    maximal = [c for c in cones if c.dim == d]
    if not maximal:
        return False
    boundary = {}
    for c in maximal:
        for n in c.facet_normals():
            wall_gens = tuple(
                g for g in c.generators if la.dot(n, g) == 0
            )
            wall = Cone(ambient, wall_gens)
            alpha = _boundary_functional(wall, live_ineqs, span_basis)
            if alpha is not None:
                boundary.setdefault(alpha, []).append(wall)
                continue
            # interior wall: some other maximal cone must cross to the
            # other side of the wall hyperplane
            crossed = any(
                other is not c
                and all(other.contains(g) for g in wall.generators)
                and any(la.dot(n, g) < 0 for g in other.generators)
                for other in maximal
            )
            if not crossed:
                return False
    # each facet of K must be covered by the walls collected on it
    for alpha, walls in boundary.items():
        sub_eqs = equations + [list(alpha)]
        if not _covers(ambient, _face_closure(walls), sub_eqs, live_ineqs):
            return False
    # facets of K with no walls at all are uncovered (when K has any)
    for alpha in _facet_functionals(live_ineqs, span_basis):
        if alpha not in boundary:
            return False
    return True


def _inside_k(cone: Cone, equations, inequalities) -> bool:
    for g in cone.generators:
        if any(la.dot(e, g) != 0 for e in equations):
            return False
        if any(la.dot(a, g) < 0 for a in inequalities):
            return False
    return True


def _boundary_functional(wall: Cone, inequalities, span_basis):
    for a in inequalities:
        if all(la.dot(a, g) == 0 for g in wall.generators):
            if any(la.dot(a, b) != 0 for b in span_basis):
                return tuple(a)
    return None


def _facet_functionals(inequalities, span_basis):
    """Inequalities that can define facets of K (not identically zero on
    the span and not made redundant by equality with others)."""
    out = []
    for a in inequalities:
        if any(la.dot(a, b) != 0 for b in span_basis):
            out.append(tuple(a))
    return out


def _face_closure(cones):
    closure = {}
    for c in cones:
        for f in c.faces():
            closure[f.generators] = f
    return list(closure.values())


# -- smooth subdivision -------------------------------------------------------

_MAX_SUBDIVISION_STEPS = 10_000


def _parallelepiped_points(cone: Cone):
    """Nonzero lattice points sum c_i g_i with 0 <= c_i < 1 (simplicial
    cone)."""
    gens = cone.generators
    if not gens:
        return []
    n = cone.ambient
    lo = [0] * n
    hi = [0] * n
    for j in range(n):
        neg = sum(min(g[j], 0) for g in gens)
        pos = sum(max(g[j], 0) for g in gens)
        lo[j], hi[j] = neg, pos
    points = []
    def iterate(j, current):
        if j == n:
            v = tuple(current)
            if la.is_zero(v):
                return
            coords = la.solve_rational(la.transpose(la.mat(gens)), v)
            if coords is None:
                return
            if all(0 <= c < 1 for c in coords):
                points.append(v)
            return
        for x in range(lo[j], hi[j] + 1):
            iterate(j + 1, current + [x])
    iterate(0, [])
    return sorted(points)


def star_subdivide(fan: Fan, ray) -> Fan:
    """Star subdivision of the fan at the given primitive ray."""
    ray = la.primitive(ray)
    new_maximal = []
    for c in fan.maximal_cones:
        if not c.contains(ray):
            new_maximal.append(c.generators)
            continue
        normals = c.facet_normals()
        replaced = False
        for n in normals:
            if la.dot(n, ray) == 0:
                continue  # facet contains the ray direction? no: ray not on it
            facet_gens = tuple(g for g in c.generators if la.dot(n, g) == 0)
            facet = Cone(fan.ambient, facet_gens)
            if facet.contains(ray):
                continue
            new_maximal.append(facet_gens + (ray,))
            replaced = True
        if not replaced:
            new_maximal.append(c.generators)
    return Fan.make(fan.ambient, new_maximal, validate=False)


def smooth_subdivision(fan: Fan) -> Fan:
    """Refinement with the same support on which every cone is smooth.

    Repeated star subdivision: first at existing rays until all cones are
    simplicial, then at the minimal-multiplicity parallelepiped lattice
    point (lexicographic tie-break).  Terminates because every step
    strictly decreases cone multiplicities.
    """
    current = fan
    for _ in range(_MAX_SUBDIVISION_STEPS):
        nonsimplicial = sorted(
            (c for c in current.maximal_cones if not c.is_simplicial()),
            key=lambda c: c.generators,
        )
        if nonsimplicial:
            current = star_subdivide(current, nonsimplicial[0].generators[0])
            continue
        candidates = []
        for c in current.maximal_cones:
            m = c.multiplicity()
            if m > 1:
                for p in _parallelepiped_points(c):
                    candidates.append((m, p))
        if not candidates:
            return current
        _, point = min(candidates)
        current = star_subdivide(current, point)
    raise DatumError("smooth subdivision did not terminate")
