"""Core model: reductive groups, highest weights, modules, canonical forms.

A module here is the data of a connected reductive group

    GL_1^k x F_1 x ... x F_r        (k = torus_dim, F_i simple)

acting on a direct sum of irreducibles.  Each summand records one highest
weight per simple factor (the zero weight means that factor acts
trivially) together with the set of torus slots acting on it by scaling.
Scalar weights on the torus are only tracked through that incidence set:
which GL_1 slots act at all, never by which character.

Dimensions are exact integers: simple group dimensions and irreducible
dimensions come from the Weyl dimension formula (:mod:`phv.roots`), with
closed-form shortcuts for type-A weights at ranks too large for the root
product to be practical.

``canonical_form`` picks a distinguished representative of the
equivalence class generated by permuting factors among equal (family,
rank), permuting summands, renumbering torus slots, and applying each
factor's outer diagram symmetry.  Two modules are ``equivalent`` iff
their canonical forms coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import roots

FAMILIES = roots.FAMILIES
_FAMILY_CODE = {fam: i for i, fam in enumerate(FAMILIES)}

#: canonical_form supports at most this many simple factors.
MAX_FACTORS = 16
#: Safety valve for the canonical search on pathologically symmetric
#: torus incidence structure (never reached by catalog-scale inputs).
_SEARCH_CAP = 200_000

#: Above this rank type-A closed forms take over from the root product.
_CLOSED_FORM_RANK = 12
#: Hard ceiling for the generic root-product path.
_WEYL_RANK_LIMIT = 64


@dataclass(frozen=True, order=True)
class Weight:
    """Sparse dominant integral weight: sorted (index, coefficient) pairs.

    Indices are 0-based fundamental-weight positions; coefficients are
    positive.  The empty tuple is the zero weight (trivial module).
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = -1
        for i, c in self.entries:
            if i <= last:
                raise ValueError(f"weight entries must be strictly index-sorted: {self.entries}")
            if c <= 0:
                raise ValueError(f"weight coefficients must be positive: {self.entries}")
            last = i

    @staticmethod
    def from_coefficients(coeffs) -> "Weight":
        """Build from a dense coefficient sequence."""
        return Weight(tuple((i, int(c)) for i, c in enumerate(coeffs) if c))

    @staticmethod
    def fundamental(index: int, coefficient: int = 1) -> "Weight":
        return Weight(((index, coefficient),))

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def coefficients(self, rank: int) -> tuple[int, ...]:
        """Dense coefficient tuple of the given length."""
        dense = [0] * rank
        for i, c in self.entries:
            if i >= rank:
                raise ValueError(f"weight index {i} out of range for rank {rank}")
            dense[i] = c
        return tuple(dense)


Weight.zero = Weight()


@dataclass(frozen=True, order=True)
class SimpleFactor:
    """One simple group, e.g. ("A", 3) for SL_4 or ("E6", 6)."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        roots.check_family(self.family, self.rank)

    @property
    def code(self) -> tuple[int, int]:
        return (_FAMILY_CODE[self.family], self.rank)


@dataclass(frozen=True)
class GroupShape:
    """A connected reductive group GL_1^torus_dim times the simple factors."""

    torus_dim: int
    factors: tuple[SimpleFactor, ...] = ()

    def __post_init__(self) -> None:
        if self.torus_dim < 0:
            raise ValueError("torus_dim must be non-negative")


@dataclass(frozen=True)
class Summand:
    """One irreducible constituent: weights per simple factor + torus slots."""

    weights: tuple[Weight, ...] = ()
    slots: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "slots", frozenset(self.slots))


@dataclass(frozen=True)
class Module:
    """A reductive group together with a finite direct sum of irreducibles."""

    group: GroupShape
    summands: tuple[Summand, ...]

    def __post_init__(self) -> None:
        if not self.summands:
            raise ValueError("a module needs at least one summand")
        r = len(self.group.factors)
        for s in self.summands:
            if len(s.weights) != r:
                raise ValueError(
                    f"summand lists {len(s.weights)} weights but the group has {r} simple factors"
                )
            for f, w in zip(self.group.factors, s.weights):
                for i, _ in w.entries:
                    if i >= f.rank:
                        raise ValueError(
                            f"weight index {i} out of range for {f.family} rank {f.rank}"
                        )
            for slot in s.slots:
                if not 0 <= slot < self.group.torus_dim:
                    raise ValueError(f"torus slot {slot} out of range")


def module(torus_dim: int, factors, summands) -> Module:
    """Convenience constructor from plain lists."""
    return Module(
        GroupShape(torus_dim, tuple(factors)),
        tuple(
            Summand(tuple(weights), frozenset(slots)) for weights, slots in summands
        ),
    )


# ---------------------------------------------------------------------------
# dimensions


def simple_dim(f: SimpleFactor) -> int:
    """Dimension of the simple group itself (rank + 2 * positive roots)."""
    return f.rank + 2 * _pos_count(f.family, f.rank)


@lru_cache(maxsize=None)
def _pos_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1) // 2
    if family in ("B", "C"):
        return rank * rank
    if family == "D":
        return rank * (rank - 1)
    return roots.positive_root_count(family, rank)


@lru_cache(maxsize=None)
def _irrep_dim(family: str, rank: int, entries: tuple[tuple[int, int], ...]) -> int:
    if not entries:
        return 1
    if family == "A" and rank > _CLOSED_FORM_RANK and len(entries) == 1:
        ((i, c),) = entries
        if c == 1:
            return comb(rank + 1, i + 1)  # alternating power of the standard module
        if i == 0 or i == rank - 1:
            return comb(rank + c, c)  # symmetric power of the standard module or its dual
    if rank > _WEYL_RANK_LIMIT:
        raise ValueError(
            f"no closed form for weight {entries} at rank {rank}; "
            f"the generic root product is limited to rank {_WEYL_RANK_LIMIT}"
        )
    return roots.weyl_dim(family, rank, entries)


def irrep_dim(f: SimpleFactor, w: Weight) -> int:
    """Dimension of the irreducible representation of f with highest weight w."""
    for i, _ in w.entries:
        if i >= f.rank:
            raise ValueError(f"weight index {i} out of range for rank {f.rank}")
    return _irrep_dim(f.family, f.rank, w.entries)


def summand_dim(m: Module, j: int) -> int:
    """Dimension of the j-th irreducible summand (torus factors act by scalars)."""
    s = m.summands[j]
    dim = 1
    for f, w in zip(m.group.factors, s.weights):
        dim *= irrep_dim(f, w)
    return dim


def module_dim(m: Module) -> int:
    """Total dimension of the underlying vector space."""
    return sum(summand_dim(m, j) for j in range(len(m.summands)))


def group_dim(m: Module) -> int:
    """Dimension of the acting group: torus_dim + sum of simple dimensions."""
    return m.group.torus_dim + sum(simple_dim(f) for f in m.group.factors)


def is_etale_candidate(m: Module) -> bool:
    """True iff dim G == dim V and at least one torus slot is present.

    A positive-dimensional centre is necessary for an open orbit of an
    equal-dimensional action on a linear space, so modules without scalars
    are rejected outright.
    """
    return m.group.torus_dim >= 1 and group_dim(m) == module_dim(m)


# ---------------------------------------------------------------------------
# diagram symmetry / dualization


_E6_DUAL = (5, 1, 4, 3, 2, 0)


def has_outer_symmetry(family: str, rank: int) -> bool:
    """True when the family carries a weight-moving diagram symmetry."""
    return (family == "A" and rank >= 2) or family == "D" or family == "E6"


def _dual_index(family: str, rank: int, i: int) -> int:
    if family == "A":
        return rank - 1 - i
    if family == "D":
        if i == rank - 2:
            return rank - 1
        if i == rank - 1:
            return rank - 2
        return i
    if family == "E6":
        return _E6_DUAL[i]
    return i


def dual_weight(f: SimpleFactor, w: Weight) -> Weight:
    """Highest weight of the dual representation."""
    if w.is_zero or not has_outer_symmetry(f.family, f.rank):
        return w
    return Weight(tuple(sorted((_dual_index(f.family, f.rank, i), c) for i, c in w.entries)))


def dualize_factor(m: Module, index: int) -> Module:
    """Apply the diagram symmetry of one factor across every summand."""
    if not 0 <= index < len(m.group.factors):
        raise ValueError(f"factor index {index} out of range")
    f = m.group.factors[index]
    new_summands = tuple(
        Summand(
            tuple(
                dual_weight(f, w) if i == index else w for i, w in enumerate(s.weights)
            ),
            s.slots,
        )
        for s in m.summands
    )
    return Module(m.group, new_summands)


# ---------------------------------------------------------------------------
# canonical form


def _min_arrangement(blocks: list[tuple[tuple, frozenset]], cap_counter: list[int]) -> tuple:
    """Lex-minimal encoding over summand order and torus slot renumbering.

    ``blocks`` holds per summand the already factor-ordered weight key and
    the original slot set.  Returns a tuple of (weight_key, slot_tuple)
    blocks where slots are renumbered 0,1,... in order of first use.

    Greedy exact search: the lex-min arrangement must start with the
    minimal achievable block, ties branch.  Branches that only differ by
    a renaming of so-far-unseen slots are collapsed via a structural
    signature, which keeps highly symmetric modules (many identical
    summands on separate slots) linear instead of factorial.
    """

    n = len(blocks)
    remaining: dict[tuple[tuple, frozenset], int] = {}
    for wk, slots in blocks:
        key = (wk, slots)
        remaining[key] = remaining.get(key, 0) + 1

    best: list[tuple] | None = None

    def branch_state(slot_map: dict[int, int], rename: dict[int, int]) -> tuple:
        # fingerprint of the remaining multiset under the candidate branch:
        # slots with an id (old or just assigned) by that id, the rest by
        # their original label.
        items = []
        for (wk, slots), count in remaining.items():
            toks = []
            for x in slots:
                if x in rename:
                    toks.append((0, rename[x]))
                elif x in slot_map:
                    toks.append((0, slot_map[x]))
                else:
                    toks.append((1, x))
            items.append((wk, tuple(sorted(toks)), count))
        return tuple(sorted(items))

    def swapped_equal(prev_slots, prev_state, cur_slots, cur_state) -> bool:
        # Do the two branches differ only by exchanging their freshly
        # renamed slots (matched by assigned id)?  If so the futures are
        # isomorphic and one branch suffices.
        phi: dict[int, int] = {}
        for x, y in zip(prev_slots, cur_slots):
            for s, t in ((x, y), (y, x)):
                if phi.setdefault(s, t) != t:
                    return False
        mapped = tuple(
            sorted(
                (wk, tuple(sorted((kind, phi.get(x, x)) if kind else (kind, x) for kind, x in toks)), count)
                for wk, toks, count in cur_state
            )
        )
        return mapped == prev_state

    def rec(slot_map: dict[int, int], next_id: int, prefix: list[tuple], tied: bool) -> None:
        nonlocal best
        cap_counter[0] += 1
        if cap_counter[0] > _SEARCH_CAP:
            raise ValueError("module too symmetric to canonicalize within the search cap")
        if len(prefix) == n:
            cand = tuple(prefix)
            if best is None or cand < tuple(best):
                best = list(cand)
            return
        pos = len(prefix)
        min_w = min(wk for (wk, _slots) in remaining)
        options = []
        for (wk, slots) in remaining:
            if wk != min_w:
                continue
            mapped = sorted(slot_map[x] for x in slots if x in slot_map)
            unmapped = sorted(x for x in slots if x not in slot_map)
            ids = tuple(sorted(mapped + list(range(next_id, next_id + len(unmapped)))))
            options.append((ids, wk, slots, unmapped))
        min_ids = min(ids for ids, *_ in options)
        block = (min_w, min_ids)
        # pruning against best is only sound while this prefix still ties it
        tied = tied and best is not None
        if tied:
            if block > best[pos]:
                return
            tied = block == best[pos]
        branches: list[tuple[tuple[int, ...], tuple]] = []
        for ids, wk, slots, unmapped in options:
            if ids != min_ids:
                continue
            key = (wk, slots)
            remaining[key] -= 1
            if not remaining[key]:
                del remaining[key]
            # only slots recurring in later blocks need their id branched;
            # slots private to this block take leftover ids in sorted order
            later = set()
            for (_wk2, slots2) in remaining:
                later |= slots2
            shared = [x for x in unmapped if x in later]
            private = [x for x in unmapped if x not in later]
            free_ids = range(next_id, next_id + len(unmapped))
            for chosen in itertools.permutations(free_ids, len(shared)):
                cap_counter[0] += 1
                if cap_counter[0] > _SEARCH_CAP:
                    raise ValueError(
                        "module too symmetric to canonicalize within the search cap"
                    )
                rename = dict(zip(shared, chosen))
                leftovers = sorted(set(free_ids) - set(chosen))
                rename.update(zip(private, leftovers))
                cur_slots = tuple(x for _id, x in sorted((i, x) for x, i in rename.items()))
                state = branch_state(slot_map, rename)
                if any(
                    swapped_equal(ps, pst, cur_slots, state) for ps, pst in branches
                ):
                    continue
                branches.append((cur_slots, state))
                slot_map.update(rename)
                prefix.append(block)
                rec(slot_map, next_id + len(unmapped), prefix, tied)
                prefix.pop()
                for x in rename:
                    del slot_map[x]
            remaining[key] = remaining.get(key, 0) + 1
        return

    rec({}, 0, [], True)
    assert best is not None
    return tuple(best)


def _orderings(factors: tuple[SimpleFactor, ...]):
    """All factor orderings compatible with the sorted (family, rank) keys."""
    order = sorted(range(len(factors)), key=lambda i: factors[i].code)
    groups: list[list[int]] = []
    for i in order:
        if groups and factors[groups[-1][0]].code == factors[i].code:
            groups[-1].append(i)
        else:
            groups.append([i])
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield tuple(itertools.chain.from_iterable(combo))


@lru_cache(maxsize=1 << 16)
def canonical_key(m: Module) -> tuple:
    """Hashable total invariant of the equivalence class of ``m``."""
    factors = m.group.factors
    if len(factors) > MAX_FACTORS:
        raise ValueError(f"canonical_form supports at most {MAX_FACTORS} simple factors")
    sorted_codes = tuple(sorted(f.code for f in factors))
    cap_counter = [0]
    best = None
    for perm in _orderings(factors):
        dualizable = [
            pos
            for pos, oi in enumerate(perm)
            if has_outer_symmetry(factors[oi].family, factors[oi].rank)
        ]
        for mask in itertools.product((False, True), repeat=len(dualizable)):
            flip = {pos for pos, b in zip(dualizable, mask) if b}
            blocks = []
            for s in m.summands:
                wk = []
                for pos, oi in enumerate(perm):
                    w = s.weights[oi]
                    if pos in flip:
                        w = dual_weight(factors[oi], w)
                    wk.append(w.entries)
                blocks.append((tuple(wk), s.slots))
            enc = _min_arrangement(blocks, cap_counter)
            if best is None or enc < best:
                best = enc
    return (m.group.torus_dim, sorted_codes, best)


def module_from_key(key: tuple) -> Module:
    """Rebuild the distinguished representative from a canonical key."""
    torus_dim, codes, blocks = key
    factors = tuple(SimpleFactor(FAMILIES[code], rank) for code, rank in codes)
    summands = tuple(
        Summand(tuple(Weight(entries) for entries in wk), frozenset(slot_ids))
        for wk, slot_ids in blocks
    )
    return Module(GroupShape(torus_dim, factors), summands)


def canonical_form(m: Module) -> Module:
    """The distinguished representative of the equivalence class of ``m``."""
    return module_from_key(canonical_key(m))


def equivalent(a: Module, b: Module) -> bool:
    """True iff the modules agree up to the canonical symmetries."""
    return canonical_key(a) == canonical_key(b)
