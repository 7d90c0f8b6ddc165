"""Brute-force F_q point counts for the catalogued split groups.

These are the independent oracles for the Weil-normalized volume factors:
every count enumerates concrete matrices/columns over F_q and filters by
the defining equations.  Sp4 is counted column by column, solving the
linear Gram constraints instead of scanning all q**16 matrices.
"""

from __future__ import annotations

from itertools import product

import numpy as np


def count_sl2(q: int) -> int:
    """#{2x2 matrices over F_q with det = 1}."""
    count = 0
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q == 1:
            count += 1
    return count


def count_gl2(q: int) -> int:
    count = 0
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q != 0:
            count += 1
    return count


def count_pgl2(q: int) -> int:
    """|GL2(F_q)| / (q - 1): scalars act freely on invertible matrices."""
    n = count_gl2(q)
    assert n % (q - 1) == 0
    return n // (q - 1)


def count_gm(q: int) -> int:
    return sum(1 for a in range(q) if a % q != 0)


def _symplectic_gram(q: int):
    """Pairing table P[i, j] = <v_i, J v_j> mod q over all of F_q^4,
    for J = diag(((0,1),(-1,0)), ((0,1),(-1,0)))."""
    vecs = np.array(list(product(range(q), repeat=4)), dtype=np.int64)
    j = np.array(
        [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
        dtype=np.int64,
    )
    return vecs, (vecs @ j @ vecs.T) % q


def count_sp4(q: int) -> int:
    """#{M in Mat_4(F_q) : M^T J M = J}, counted by columns.

    M is symplectic iff its columns satisfy <c1,c2> = <c3,c4> = 1 and the
    four cross pairings vanish; such columns are automatically a basis, so
    no separate invertibility filter is needed.  For each admissible
    (c1, c2) the candidates for c3 are the q^2 common annihilators; each
    candidate independent of (c1, c2) leaves a rank-3 linear system for c4
    whose solution set has exactly q points, counted via the pairing table.
    """
    vecs, pairing = _symplectic_gram(q)
    ones = pairing == 1
    zeros = pairing == 0
    total = 0
    pairs = np.argwhere(ones)
    for i, jdx in pairs:
        common = np.flatnonzero(zeros[i] & zeros[jdx])
        # candidates for c3: common annihilators of c1, c2 (q^2 of them,
        # including 0 and nothing else from span(c1, c2))
        sub = pairing[np.ix_(common, common)]
        total += int(np.count_nonzero(sub == 1))
    return total
