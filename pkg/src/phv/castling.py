"""Castling transforms, reducedness, and bounded orbit enumeration.

A castling move rewrites a module without changing its birational
geometry.  Both directions are mechanical on our data:

* ``castle``: a type-A factor SL_n acting by its standard weight (or its
  dual) on a subset of summands of joint cofactor dimension m > n is
  replaced by SL_{m-n} acting by the standard weight on the same
  summands, while every summand the factor does not touch is dualized.
  For m - n = 1 the new factor is trivial and is simply deleted.
* ``promote``: the inverse special case seen from below, n = 1.  A fresh
  factor SL_{m-1} is attached by the standard weight to a chosen summand
  subset of total dimension m >= 3, and the complementary summands are
  dualized.

Both directions preserve ``group_dim - module_dim``; in particular they
carry equal-dimension (etale candidate) modules to equal-dimension
modules.  Torus slots ride along unchanged.

``enumerate_orbit`` explores the castling orbit breadth-first up to
configurable limits, recording one shortest witnessing path per member.
Orbits are almost always infinite (any summand set of dimension >= 3 can
be promoted), so truncation flags report which limit cut the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Module,
    Summand,
    SimpleFactor,
    GroupShape,
    Weight,
    canonical_form,
    canonical_key,
    dual_weight,
    dualize_factor,
    group_dim,
    module_dim,
    summand_dim,
)

SUBSET_POLICIES = ("singletons+full", "all-subsets")


@dataclass(frozen=True)
class CastlingMove:
    """One applicable transform, relative to a specific module.

    ``kind`` is "castle" or "promote"; ``factor`` indexes the factor being
    replaced (None for promote); ``summands`` is the summand index set the
    move acts through; ``n`` and ``m`` are the defining parameters with
    m > n >= 1 (n = 1 for promote).
    """

    kind: str
    factor: int | None
    summands: frozenset[int]
    n: int
    m: int

    def __post_init__(self) -> None:
        if self.kind not in ("castle", "promote"):
            raise ValueError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "summands", frozenset(self.summands))
        if not self.summands:
            raise ValueError("a move needs a non-empty summand set")
        if not self.m > self.n >= 1:
            raise ValueError(f"move parameters need m > n >= 1, got n={self.n} m={self.m}")


@dataclass(frozen=True)
class OrbitLimits:
    """Bounds for orbit exploration; all limits are inclusive."""

    max_steps: int = 5
    max_dim: int = 10**7
    max_nodes: int = 10**5
    subset_policy: str = "singletons+full"

    def __post_init__(self) -> None:
        if min(self.max_steps, self.max_dim, self.max_nodes) < 1:
            raise ValueError("all orbit limits must be >= 1")
        if self.subset_policy not in SUBSET_POLICIES:
            raise ValueError(f"subset_policy must be one of {SUBSET_POLICIES}")


def _standard_orientation(f: SimpleFactor, w: Weight) -> int | None:
    """+1 for the standard weight, -1 for its dual, else None."""
    if f.family != "A" or len(w.entries) != 1:
        return None
    ((i, c),) = w.entries
    if c != 1:
        return None
    if i == 0:
        return 1
    if i == f.rank - 1:
        return -1
    return None


def _promotion_subsets(m: Module, policy: str):
    ns = len(m.summands)
    subsets = {frozenset([j]) for j in range(ns)}
    if policy == "singletons+full":
        subsets.add(frozenset(range(ns)))
    else:
        for bits in range(1, 1 << ns):
            subsets.add(frozenset(j for j in range(ns) if bits >> j & 1))
    return sorted(subsets, key=lambda s: (len(s), sorted(s)))


def _castle_moves(m: Module) -> list[CastlingMove]:
    moves: list[CastlingMove] = []
    for i, f in enumerate(m.group.factors):
        support = frozenset(
            j for j, s in enumerate(m.summands) if not s.weights[i].is_zero
        )
        if not support or f.family != "A":
            continue
        orientations = {
            _standard_orientation(f, m.summands[j].weights[i]) for j in support
        }
        if None in orientations or len(orientations) != 1:
            continue
        n = f.rank + 1
        total = sum(summand_dim(m, j) for j in support)
        cofactor, rem = divmod(total, n)
        assert rem == 0
        if cofactor > n:
            moves.append(CastlingMove("castle", i, support, n, cofactor))
    return moves


def castling_moves(m: Module, policy: str = "singletons+full") -> list[CastlingMove]:
    """All applicable moves, castles first (by factor), then promotions.

    A factor yields a castle when it is type A, acts by the standard
    weight or its dual uniformly on the summands it touches, and the
    joint dimension of those summands divided by n = rank+1 (the cofactor
    dimension m) exceeds n.  Promotions exist for every admitted summand
    subset of total dimension >= 3; ``policy`` chooses between singleton
    subsets plus the full set (default) and all non-empty subsets.
    """
    if policy not in SUBSET_POLICIES:
        raise ValueError(f"subset_policy must be one of {SUBSET_POLICIES}")
    moves = _castle_moves(m)
    for subset in _promotion_subsets(m, policy):
        total = sum(summand_dim(m, j) for j in subset)
        if total >= 3:
            moves.append(CastlingMove("promote", None, subset, 1, total))
    return moves


def _validate_move(m: Module, mv: CastlingMove) -> None:
    if mv.kind == "promote":
        if not all(0 <= j < len(m.summands) for j in mv.summands):
            raise ValueError("move summand set out of range")
        total = sum(summand_dim(m, j) for j in mv.summands)
        if mv.m != total or total < 3 or mv.n != 1:
            raise ValueError(f"promotion parameters do not match the module: {mv}")
        return
    if mv not in _castle_moves(m):
        raise ValueError(f"move is not applicable to this module: {mv}")


def castle(m: Module, mv: CastlingMove) -> Module:
    """Apply one move and return the canonical form of the result."""
    _validate_move(m, mv)
    factors = list(m.group.factors)
    if mv.kind == "castle":
        i = mv.factor
        f = factors[i]
        # normalise a dual-standard action to the standard one first
        orientation = _standard_orientation(f, m.summands[next(iter(mv.summands))].weights[i])
        work = dualize_factor(m, i) if orientation == -1 else m
        new_rank = mv.m - mv.n - 1
        new_factor = SimpleFactor("A", new_rank) if new_rank >= 1 else None
        summands = []
        for j, s in enumerate(work.summands):
            ws = []
            for pos, (fac, w) in enumerate(zip(factors, s.weights)):
                if pos == i:
                    continue
                if j in mv.summands:
                    ws.append(w)
                else:
                    ws.append(dual_weight(fac, w))
            if new_factor is not None:
                ws.append(Weight.fundamental(0) if j in mv.summands else Weight.zero)
            summands.append(Summand(tuple(ws), s.slots))
        out_factors = tuple(fac for pos, fac in enumerate(factors) if pos != i)
        if new_factor is not None:
            out_factors += (new_factor,)
    else:
        new_factor = SimpleFactor("A", mv.m - 2)
        summands = []
        for j, s in enumerate(m.summands):
            if j in mv.summands:
                ws = tuple(s.weights) + (Weight.fundamental(0),)
            else:
                ws = tuple(
                    dual_weight(fac, w) for fac, w in zip(factors, s.weights)
                ) + (Weight.zero,)
            summands.append(Summand(ws, s.slots))
        out_factors = tuple(factors) + (new_factor,)
    result = Module(GroupShape(m.group.torus_dim, out_factors), tuple(summands))
    return canonical_form(result)


def is_reduced(m: Module) -> bool:
    """True iff no single move strictly decreases the module dimension.

    Promotions always increase dimension (they multiply a summand block
    of dimension m >= 3 by m - 1), so only castle moves are examined.
    """
    dim = module_dim(m)
    for mv in castling_moves(m, "singletons+full"):
        if mv.kind == "castle" and module_dim(castle(m, mv)) < dim:
            return False
    return True


def reduce_module(m: Module) -> Module:
    """Greedily apply dimension-decreasing castles until none remain.

    The result is the canonical form of the unique minimal-dimension
    member of the castling class.
    """
    current = canonical_form(m)
    while True:
        dim = module_dim(current)
        best_next = None
        for mv in castling_moves(current, "singletons+full"):
            if mv.kind != "castle":
                continue
            out = castle(current, mv)
            if module_dim(out) < dim:
                if best_next is None or canonical_key(out) < canonical_key(best_next):
                    best_next = out
        if best_next is None:
            return current
        current = best_next


@dataclass(frozen=True)
class OrbitMember:
    """One orbit node with a shortest witnessing path from the seed."""

    module: Module
    path: tuple[CastlingMove, ...]
    depth: int


@dataclass(frozen=True)
class OrbitFragment:
    """BFS closure of a seed under castling, up to the given limits."""

    seed: Module
    members: tuple[OrbitMember, ...]
    truncated_steps: bool
    truncated_dim: bool
    truncated_nodes: bool

    @property
    def truncated(self) -> bool:
        return self.truncated_steps or self.truncated_dim or self.truncated_nodes

    def modules(self) -> tuple[Module, ...]:
        return tuple(mem.module for mem in self.members)


def enumerate_orbit(seed: Module, limits: OrbitLimits = OrbitLimits()) -> OrbitFragment:
    """Breadth-first castling closure of ``seed`` within ``limits``.

    Members are canonical forms; each carries one shortest path of moves
    (each move applies to the canonical form of the previous member).
    Exploration order is deterministic: frontier nodes are expanded in
    canonical-key order and moves in their listed order.
    """
    if module_dim(seed) > limits.max_dim:
        raise ValueError("seed dimension already exceeds max_dim")
    root = canonical_form(seed)
    members: dict[tuple, OrbitMember] = {
        canonical_key(root): OrbitMember(root, (), 0)
    }
    frontier = [members[canonical_key(root)]]
    truncated_dim = False
    truncated_nodes = False
    depth = 0
    while frontier and depth < limits.max_steps:
        depth += 1
        frontier.sort(key=lambda mem: canonical_key(mem.module))
        next_frontier: list[OrbitMember] = []
        for mem in frontier:
            for mv in castling_moves(mem.module, limits.subset_policy):
                child = castle(mem.module, mv)
                if module_dim(child) > limits.max_dim:
                    truncated_dim = True
                    continue
                key = canonical_key(child)
                if key in members:
                    continue
                if len(members) >= limits.max_nodes:
                    truncated_nodes = True
                    break
                record = OrbitMember(child, mem.path + (mv,), depth)
                members[key] = record
                next_frontier.append(record)
            if truncated_nodes:
                break
        if truncated_nodes:
            break
        frontier = next_frontier
    truncated_steps = bool(frontier) and depth >= limits.max_steps
    ordered = tuple(
        sorted(
            members.values(),
            key=lambda mem: (module_dim(mem.module), canonical_key(mem.module)),
        )
    )
    return OrbitFragment(root, ordered, truncated_steps, truncated_dim, truncated_nodes)


@dataclass(frozen=True)
class EquivalenceResult:
    """Outcome of a bounded bidirectional castling-equivalence search."""

    found: bool
    path: tuple[CastlingMove, ...] | None
    truncated: bool


def _invert_path(start: Module, path: tuple[CastlingMove, ...]) -> tuple[CastlingMove, ...]:
    # replay start -...-> end, then find the reverse move at each step
    stations = [canonical_form(start)]
    for mv in path:
        stations.append(castle(stations[-1], mv))
    inverse: list[CastlingMove] = []
    for before, after in zip(stations, stations[1:]):
        back = None
        for mv in castling_moves(after, "all-subsets"):
            if castle(after, mv) == before:
                back = mv
                break
        assert back is not None, "castling moves must be reversible"
        inverse.append(back)
    return tuple(reversed(inverse))


def castling_equivalent(
    a: Module, b: Module, limits: OrbitLimits = OrbitLimits()
) -> EquivalenceResult:
    """Search for a move path from ``a`` to ``b`` within the limits.

    Bidirectional: both endpoints are explored breadth-first and the
    search stops at the first canonical-form meeting point.  A negative
    answer is only "not equivalent within these limits".
    """
    ca, cb = canonical_form(a), canonical_form(b)
    if canonical_key(ca) == canonical_key(cb):
        return EquivalenceResult(True, (), False)
    frag_a = enumerate_orbit(ca, limits)
    index_a = {canonical_key(mem.module): mem for mem in frag_a.members}
    frag_b = enumerate_orbit(cb, limits)
    for mem_b in sorted(frag_b.members, key=lambda mem: mem.depth):
        key = canonical_key(mem_b.module)
        if key in index_a:
            forward = index_a[key].path
            backward = _invert_path(cb, mem_b.path)
            return EquivalenceResult(True, forward + backward, False)
    return EquivalenceResult(False, None, frag_a.truncated or frag_b.truncated)
