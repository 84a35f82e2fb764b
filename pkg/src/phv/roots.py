"""Root data for the nine simple families and the Weyl dimension formula.

Everything here works in simple-root coordinates over exact integer /
rational arithmetic.  A simple family is identified by one of the labels
in :data:`FAMILIES`; classical families take a rank, exceptional labels
carry their rank in the name.

Conventions (Bourbaki numbering throughout):

* ``cartan_matrix(family, rank)[i][j]`` is the pairing of the i-th simple
  root against the j-th simple coroot, so the i-th row lists the
  coefficients of the i-th simple root in the fundamental-weight basis.
* ``symmetrizers`` returns the integer vector ``d`` with
  ``A[i][j] * d[j] == A[j][i] * d[i]``, normalised to gcd 1.  Up to a
  global scale ``d[i]`` is the squared length of the i-th simple root.
* Positive roots are produced by reflection closure starting from the
  simple roots; a root is stored as its tuple of simple-root coefficients.

The irreducible representation with highest weight ``m`` (non-negative
fundamental-weight coefficients) has dimension

    prod over positive roots a of
        sum_j c_j(a) d_j (m_j + 1)  /  sum_j c_j(a) d_j

which :func:`weyl_dim` evaluates exactly with ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

FAMILIES = ("A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2")

#: Minimal admitted rank per classical family.  B1/C1/D3 overlap other
#: families as Lie algebras but only these shapes are accepted: A >= 1,
#: B >= 2, C >= 1, D >= 3.
_RANK_MIN = {"A": 1, "B": 2, "C": 1, "D": 3}
_RANK_FIXED = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}


def check_family(family: str, rank: int) -> None:
    """Validate a (family, rank) pair, raising ValueError if inadmissible."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family in _RANK_FIXED:
        if rank != _RANK_FIXED[family]:
            raise ValueError(f"family {family} has fixed rank {_RANK_FIXED[family]}, got {rank}")
    elif rank < _RANK_MIN[family]:
        raise ValueError(f"family {family} requires rank >= {_RANK_MIN[family]}, got {rank}")


@lru_cache(maxsize=None)
def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with A[i][j] = <alpha_i, alpha_j-check> (0-based rows)."""
    check_family(family, rank)
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def bond(i: int, j: int, ij: int = -1, ji: int = -1) -> None:
        a[i][j] = ij
        a[j][i] = ji

    if family in ("A", "B", "C", "D"):
        chain = n - 1 if family != "D" else n - 2
        for i in range(chain - 1):
            bond(i, i + 1)
        if family == "A" and n >= 2:
            bond(n - 2, n - 1)
        elif family == "B":
            # last simple root short: alpha_{n-1} pairs doubly against its coroot
            bond(n - 2, n - 1, ij=-2, ji=-1)
        elif family == "C":
            if n >= 2:
                bond(n - 2, n - 1, ij=-1, ji=-2)
        elif family == "D":
            # fork: both tail nodes attach to node n-3
            bond(n - 3, n - 2)
            bond(n - 3, n - 1)
    elif family in ("E6", "E7", "E8"):
        # chain 0-2-3-4-5(-6-7), extra node 1 attached to 3
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if n >= 7:
            edges.append((5, 6))
        if n == 8:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    elif family == "F4":
        bond(0, 1)
        bond(1, 2, ij=-2, ji=-1)  # nodes 0,1 long; 2,3 short
        bond(2, 3)
    elif family == "G2":
        bond(0, 1, ij=-1, ji=-3)  # node 0 short, node 1 long
    return tuple(tuple(row) for row in a)


@lru_cache(maxsize=None)
def symmetrizers(family: str, rank: int) -> tuple[int, ...]:
    """Integer vector d with A[i][j]*d[j] == A[j][i]*d[i], gcd 1."""
    a = cartan_matrix(family, rank)
    n = rank
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    queue = [0]
    while queue:
        i = queue.pop()
        for j in range(n):
            if a[i][j] != 0 and i != j and d[j] is None:
                d[j] = d[i] * Fraction(a[j][i], a[i][j])
                queue.append(j)
    assert all(x is not None for x in d), "Dynkin diagram must be connected"
    scale = math.lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints)


@lru_cache(maxsize=None)
def positive_roots(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """All positive roots as simple-root coefficient tuples.

    Reflection closure: every positive root of height h+1 arises from one
    of height h by a simple reflection that stays inside the positive
    cone, so closing the simple roots under all simple reflections and
    keeping non-negative vectors enumerates the whole positive system.
    """
    a = cartan_matrix(family, rank)
    n = rank
    simples = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    seen = set(simples)
    queue = list(simples)
    while queue:
        c = queue.pop()
        for j in range(n):
            pairing = sum(c[i] * a[i][j] for i in range(n))
            image = list(c)
            image[j] -= pairing
            if image[j] < 0:
                continue
            t = tuple(image)
            if t not in seen:
                seen.add(t)
                queue.append(t)
    return tuple(sorted(seen, key=lambda c: (sum(c), c)))


@lru_cache(maxsize=None)
def _weighted_root_data(family: str, rank: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # per positive root: (vector of c_j * d_j, its sum) -- the sum is the
    # pairing of the root against the Weyl vector.
    d = symmetrizers(family, rank)
    out = []
    for c in positive_roots(family, rank):
        cd = tuple(ci * di for ci, di in zip(c, d))
        out.append((cd, sum(cd)))
    return tuple(out)


def weyl_dim(family: str, rank: int, entries: tuple[tuple[int, int], ...]) -> int:
    """Dimension of the irreducible with highest weight given sparsely.

    ``entries`` lists (index, coefficient) pairs with 0-based fundamental
    weight indices; omitted coefficients are zero.
    """
    check_family(family, rank)
    for i, c in entries:
        if not 0 <= i < rank:
            raise ValueError(f"weight index {i} out of range for rank {rank}")
        if c <= 0:
            raise ValueError(f"weight coefficient at index {i} must be positive, got {c}")
    total = Fraction(1)
    for cd, rho_pairing in _weighted_root_data(family, rank):
        num = rho_pairing + sum(cd[i] * c for i, c in entries)
        total *= Fraction(num, rho_pairing)
    assert total.denominator == 1, "Weyl dimension product must be integral"
    return int(total)


def positive_root_count(family: str, rank: int) -> int:
    """Number of positive roots (simple dimension = rank + 2 * count)."""
    return len(positive_roots(family, rank))
