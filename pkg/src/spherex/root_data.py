"""Lattices, based root data, Weyl groups and point-count polynomials for
split reductive groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import combinations

from . import intlinalg as la
from .errors import CapExceeded, DatumError

WEYL_CAP_DEFAULT = 10**7


@dataclass(frozen=True)
class Lattice:
    """A finitely generated sublattice of Z^ambient, stored by an HNF basis.

    ``basis`` rows generate; the HNF makes membership and saturation
    decidable deterministically.
    """

    ambient: int
    basis: tuple = ()

    @staticmethod
    def standard(n: int) -> "Lattice":
        return Lattice(n, tuple(tuple(row) for row in la.identity(n)))

    @staticmethod
    def from_rows(ambient: int, rows) -> "Lattice":
        return Lattice(ambient, tuple(la.hnf(rows, ambient)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        return la.in_lattice(self.basis, v)

    def coords(self, v):
        """Rational coordinates of v in this lattice's basis (None if v is
        outside the Q-span)."""
        if self.rank == 0:
            return () if la.is_zero(v) else None
        return la.lattice_coords(self.basis, v)

    def is_saturated_in_ambient(self) -> bool:
        return la.is_saturated(self.basis, self.ambient)

    def saturation(self) -> "Lattice":
        return Lattice(self.ambient, tuple(la.saturate(self.basis, self.ambient)))


@dataclass(frozen=True)
class BasedRootDatum:
    """Character/cocharacter lattices Z^rank with the dot-product pairing,
    plus simple roots and coroots.

    The Cartan matrix must be a generalized Cartan matrix of finite type;
    this is what makes every enumeration below terminate.
    """

    rank: int
    simple_roots: tuple
    simple_coroots: tuple
    names: tuple

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise DatumError("roots/coroots length mismatch")
        if len(self.names) != len(self.simple_roots):
            raise DatumError("names length mismatch")
        for a, av in zip(self.simple_roots, self.simple_coroots):
            if len(a) != self.rank or len(av) != self.rank:
                raise DatumError("root of wrong ambient dimension")
            if la.dot(a, av) != 2:
                raise DatumError(f"<a, a^> != 2 for root {list(a)}")
        validate_finite_type(self.cartan_matrix())

    @property
    def nroots(self) -> int:
        return len(self.simple_roots)

    def cartan_matrix(self):
        return la.mat(
            tuple(la.dot(a, bv) for bv in self.simple_coroots)
            for a in self.simple_roots
        )

    def root_index(self, name: str) -> int:
        return self.names.index(name)

    # -- serialization (the JSON wire schema) --------------------------------

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "simple_roots": [list(a) for a in self.simple_roots],
            "simple_coroots": [list(a) for a in self.simple_coroots],
            "names": list(self.names),
        }

    @staticmethod
    def from_json(data: dict) -> "BasedRootDatum":
        return BasedRootDatum(
            rank=int(data["rank"]),
            simple_roots=tuple(tuple(int(x) for x in a) for a in data["simple_roots"]),
            simple_coroots=tuple(tuple(int(x) for x in a) for a in data["simple_coroots"]),
            names=tuple(str(n) for n in data.get("names", [f"a{i+1}" for i in range(len(data["simple_roots"]))])),
        )

    @staticmethod
    def loads(text: str) -> "BasedRootDatum":
        return BasedRootDatum.from_json(json.loads(text))


def validate_finite_type(cartan) -> None:
    """A generalized Cartan matrix is of finite type iff every principal
    minor is positive (checked with exact rational determinants)."""
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise DatumError("Cartan diagonal entry != 2")
        for j in range(n):
            if i != j:
                if cartan[i][j] > 0:
                    raise DatumError("positive off-diagonal Cartan entry")
                if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise DatumError("non-symmetric Cartan zero pattern")
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            sub = la.mat(tuple(cartan[i][j] for j in idx) for i in idx)
            if la.det(sub) <= 0:
                raise DatumError("Cartan matrix is not of finite type")


def dual_root_datum(rd: BasedRootDatum) -> BasedRootDatum:
    """Swap the two lattices and exchange roots with coroots (involutive)."""
    return BasedRootDatum(
        rank=rd.rank,
        simple_roots=rd.simple_coroots,
        simple_coroots=rd.simple_roots,
        names=rd.names,
    )


def reflection_on_chars(root, coroot):
    """Matrix of s_a on the character lattice: x -> x - <x, a^> a."""
    n = len(root)
    return la.mat(
        tuple((1 if i == j else 0) - root[i] * coroot[j] for j in range(n))
        for i in range(n)
    )


def reflection_on_cochars(root, coroot):
    """Matrix of s_a on the cocharacter lattice: v -> v - <a, v> a^."""
    n = len(root)
    return la.mat(
        tuple((1 if i == j else 0) - coroot[i] * root[j] for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class WeylGroup:
    """Finite reflection group with reduced words and lengths.

    ``elements`` maps the matrix (acting on the character lattice) to its
    length; ``words`` holds one reduced word per element.  Enumeration is
    breadth-first on words, so lengths are exact.
    """

    generators: tuple
    elements: dict = field(hash=False, compare=False, default=None)
    words: dict = field(hash=False, compare=False, default=None)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def longest_element(self):
        maxlen = max(self.elements.values())
        longest = [m for m, l in self.elements.items() if l == maxlen]
        if len(longest) != 1:
            raise DatumError("longest element is not unique")
        return longest[0]

    def length(self, m) -> int:
        return self.elements[m]

    def poincare_coefficients(self) -> tuple:
        """Coefficient c_k = #{w : l(w) = k}; the polynomial sum q^l(w)."""
        maxlen = max(self.elements.values()) if self.elements else 0
        coeffs = [0] * (maxlen + 1)
        for l in self.elements.values():
            coeffs[l] += 1
        return tuple(coeffs)


def generate_group(generators, cap: int = WEYL_CAP_DEFAULT,
                   ambient_rank: int = 0) -> WeylGroup:
    """Breadth-first enumeration from the identity on reduced words."""
    if not generators:
        ident = la.identity(ambient_rank)
        return WeylGroup(tuple(), {ident: 0}, {ident: ()})
    n = len(generators[0])
    ident = la.identity(n)
    elements = {ident: 0}
    words = {ident: ()}
    frontier = [ident]
    length = 0
    while frontier:
        length += 1
        new_frontier = []
        for m in frontier:
            for gi, g in enumerate(generators):
                prod = la.mat_mul(m, g)
                if prod not in elements:
                    elements[prod] = length
                    words[prod] = words[m] + (gi,)
                    new_frontier.append(prod)
                    if len(elements) > cap:
                        raise CapExceeded(
                            f"Weyl enumeration passed the cap {cap}"
                        )
        frontier = new_frontier
    return WeylGroup(tuple(generators), elements, words)


@cache
def generate_weyl(rd: BasedRootDatum, cap: int = WEYL_CAP_DEFAULT) -> WeylGroup:
    gens = tuple(
        reflection_on_chars(a, av)
        for a, av in zip(rd.simple_roots, rd.simple_coroots)
    )
    return generate_group(gens, cap, ambient_rank=rd.rank)


def poincare_polynomial(w: WeylGroup) -> tuple:
    """Coefficients of sum_w q^l(w), lowest degree first."""
    return w.poincare_coefficients()


@cache
def positive_roots(rd: BasedRootDatum):
    """All positive roots with their coroots, by reflection closure.

    Returns a list of (root, coroot) pairs; simple pairs come first, the
    rest ordered by height then lexicographically.
    """
    simple = list(zip(rd.simple_roots, rd.simple_coroots))
    known = {pair[0]: pair[1] for pair in simple}
    changed = True
    while changed:
        changed = False
        for a, av in zip(rd.simple_roots, rd.simple_coroots):
            s_char = reflection_on_chars(a, av)
            s_cochar = reflection_on_cochars(a, av)
            for root, coroot in list(known.items()):
                new_root = la.mat_vec(s_char, root)
                if new_root in known:
                    continue
                if _is_positive(rd, new_root):
                    known[new_root] = la.mat_vec(s_cochar, coroot)
                    changed = True
    def height(root):
        coords = root_coordinates(rd, root)
        return sum(coords)
    items = sorted(known.items(), key=lambda kv: (height(kv[0]), kv[0]))
    return items


def root_coordinates(rd: BasedRootDatum, v):
    """Coordinates of v in the simple-root basis (exact Fractions)."""
    sol = la.solve_rational(la.transpose(la.mat(rd.simple_roots)), v)
    if sol is None:
        raise DatumError(f"vector {list(v)} is outside the root span")
    return sol


def _is_positive(rd: BasedRootDatum, v) -> bool:
    try:
        coords = root_coordinates(rd, v)
    except DatumError:
        return False
    return all(c >= 0 for c in coords) and any(c > 0 for c in coords)


def duality_involution(rd: BasedRootDatum, weyl: WeylGroup | None = None):
    """The map x -> -w_l(x) on the character lattice and the induced
    permutation of the simple roots.

    Returns (matrix, permutation tuple p with -w_l(a_i) = a_{p[i]}).
    """
    weyl = weyl if weyl is not None else generate_weyl(rd)
    wl = weyl.longest_element
    minus_wl = la.mat(tuple(-x for x in row) for row in wl)
    perm = []
    for a in rd.simple_roots:
        image = la.mat_vec(minus_wl, a)
        try:
            perm.append(rd.simple_roots.index(image))
        except ValueError:
            raise DatumError("-w_l does not permute the simple roots")
    return minus_wl, tuple(perm)


# -- point counts ------------------------------------------------------------

def group_order_coefficients(rd: BasedRootDatum, weyl: WeylGroup | None = None):
    """Data for |G(F_q)| = q^N (q-1)^r P_W(q): returns (N, r, P_W coeffs)."""
    weyl = weyl if weyl is not None else generate_weyl(rd)
    npos = len(positive_roots(rd))
    return npos, rd.rank, weyl.poincare_coefficients()


def group_order(rd: BasedRootDatum, q: int, weyl: WeylGroup | None = None) -> int:
    """|G(F_q)| for the split group with this root datum."""
    npos, r, coeffs = group_order_coefficients(rd, weyl)
    pw = sum(c * q**k for k, c in enumerate(coeffs))
    return q**npos * (q - 1) ** r * pw


def group_dimension(rd: BasedRootDatum) -> int:
    return 2 * len(positive_roots(rd)) + rd.rank


def product_datum(*data: BasedRootDatum) -> BasedRootDatum:
    """Direct product of based root data (block-diagonal lattices)."""
    rank = sum(d.rank for d in data)
    roots, coroots, names = [], [], []
    offset = 0
    for k, d in enumerate(data):
        for a, av, nm in zip(d.simple_roots, d.simple_coroots, d.names):
            pad_a = (0,) * offset + tuple(a) + (0,) * (rank - offset - d.rank)
            pad_av = (0,) * offset + tuple(av) + (0,) * (rank - offset - d.rank)
            roots.append(pad_a)
            coroots.append(pad_av)
            names.append(f"{nm}.{k+1}" if len(data) > 1 else nm)
        offset += d.rank
    return BasedRootDatum(rank, tuple(roots), tuple(coroots), tuple(names))


# -- standard catalogue of data ----------------------------------------------

def datum_sl2() -> BasedRootDatum:
    return BasedRootDatum(1, ((2,),), ((1,),), ("a",))


def datum_pgl2() -> BasedRootDatum:
    return BasedRootDatum(1, ((1,),), ((2,),), ("a",))


def datum_gl2() -> BasedRootDatum:
    return BasedRootDatum(2, ((1, -1),), ((1, -1),), ("a",))


def datum_gl3() -> BasedRootDatum:
    return BasedRootDatum(
        3, ((1, -1, 0), (0, 1, -1)), ((1, -1, 0), (0, 1, -1)), ("a1", "a2")
    )


def datum_gm() -> BasedRootDatum:
    return BasedRootDatum(1, (), (), ())


def datum_so5() -> BasedRootDatum:
    # B2 with the short simple root named "a": a = e2, b = e1 - e2
    return BasedRootDatum(2, ((0, 1), (1, -1)), ((0, 2), (1, -1)), ("a", "b"))


def datum_sp4() -> BasedRootDatum:
    # C2: a = e1 - e2 (short), b = 2 e2 (long)
    return BasedRootDatum(2, ((1, -1), (0, 2)), ((1, -1), (0, 1)), ("a", "b"))


def datum_pgl2_squared() -> BasedRootDatum:
    return product_datum(datum_pgl2(), datum_pgl2())
