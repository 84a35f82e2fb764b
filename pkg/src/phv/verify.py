"""Mechanical verifiers for the gcd invariants, the non-existence scan,
catalog consistency and the decomposition proxy.

Every verifier returns a :class:`Report` whose verdict is ``pass`` exactly
when no violation was recorded; bounded searches report their truncation
flags in ``stats`` and deliberately claim nothing beyond the explored
fragment.  The decomposition proxy can also return ``inconclusive`` for
components the catalog cannot classify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .castling import (
    OrbitLimits,
    castling_equivalent,
    enumerate_orbit,
    is_reduced,
    reduce_module,
)
from .catalog import catalog_instantiate, catalog_list, match_nonregular_family
from .core import (
    GroupShape,
    Module,
    Summand,
    canonical_form,
    canonical_key,
    group_dim,
    irrep_dim,
    is_etale_candidate,
    module_dim,
    summand_dim,
)
from .grammar import format_module

__all__ = [
    "VIOLATION_CODES",
    "Violation",
    "Report",
    "theorem_A_check",
    "chain_invariant_check",
    "theorem_B_scan",
    "verify_catalog",
    "baues_decomposition_check",
]

VIOLATION_CODES = (
    "SHAPE",
    "GCD-PAIR",
    "GCD-N-EXTRA",
    "GCD-DRIFT",
    "EQUAL-FACTORS",
    "DIM-MISMATCH",
    "NOT-REDUCED",
    "UNMATCHED-COMPONENT",
)


@dataclass(frozen=True)
class Violation:
    """One recorded defect: a code, where it happened, and the numbers."""

    code: str
    location: str
    detail: str

    def __post_init__(self) -> None:
        if self.code not in VIOLATION_CODES:
            raise ValueError(f"unknown violation code {self.code!r}")


@dataclass(frozen=True)
class Report:
    """Outcome of one verifier run."""

    subject: str
    verdict: str  # "pass" | "fail" | "inconclusive"
    violations: tuple[Violation, ...] = ()
    stats: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.verdict not in ("pass", "fail", "inconclusive"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "pass" and self.violations:
            raise ValueError("a passing report cannot carry violations")

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "verdict": self.verdict,
            "violations": [
                {"code": v.code, "location": v.location, "detail": v.detail}
                for v in self.violations
            ],
            "stats": dict(self.stats),
        }

    def text(self) -> str:
        lines = [f"subject: {self.subject}", f"verdict: {self.verdict}"]
        if self.violations:
            lines.append(f"violations ({len(self.violations)}):")
            lines.extend(
                f"  [{v.code}] {v.location}: {v.detail}" for v in self.violations
            )
        else:
            lines.append("violations: none")
        for key in sorted(self.stats):
            lines.append(f"{key}: {self.stats[key]}")
        return "\n".join(lines)


def _verdict(violations, inconclusive: bool = False) -> str:
    if violations:
        return "fail"
    return "inconclusive" if inconclusive else "pass"


# ---------------------------------------------------------------------------
# gcd invariants


def _is_standard_action(family: str, rank: int, entries) -> bool:
    """The standard weight of an A-type factor, or its dual."""
    if family != "A" or len(entries) != 1:
        return False
    ((i, c),) = entries
    return c == 1 and i in (0, rank - 1)


def theorem_A_check(m: Module) -> Report:
    """Coprimality of the standard-factor sizes on an irreducible module.

    The factors acting by a standard weight (or its dual) form the set W
    with sizes m_i = rank + 1; at most one factor may act otherwise, and
    n is the dimension of its representation (1 if there is none).  With
    such a factor present, the m_i must be pairwise coprime and coprime
    to n at all but at most one index; with every factor standard, the
    m_i must be pairwise coprime at all but at most one pair.
    """
    if len(m.summands) != 1:
        raise ValueError("theorem_A_check needs an irreducible module (single summand)")
    subject = format_module(m)
    s = m.summands[0]
    w_sizes: list[int] = []
    rest = []
    for f, w in zip(m.group.factors, s.weights):
        if w.is_zero:
            continue  # trivially-acting factors are dropped
        if _is_standard_action(f.family, f.rank, w.entries):
            w_sizes.append(f.rank + 1)
        else:
            rest.append((f, w))

    violations: list[Violation] = []
    stats: dict = {"w_sizes": tuple(w_sizes)}
    if len(rest) >= 2:
        names = ", ".join(f"{f.family}{f.rank}" for f, _ in rest)
        violations.append(
            Violation(
                "SHAPE",
                subject,
                f"{len(rest)} factors ({names}) act by a non-standard weight; "
                "at most one is allowed",
            )
        )
        return Report(subject, "fail", tuple(violations), stats)

    n = irrep_dim(*rest[0]) if rest else 1
    mode = "theorem-A" if rest else "lemma-3.2"
    stats.update({"mode": mode, "n": n})

    bad_pairs = [
        (i, j, math.gcd(w_sizes[i - 1], w_sizes[j - 1]))
        for i in range(1, len(w_sizes) + 1)
        for j in range(i + 1, len(w_sizes) + 1)
        if math.gcd(w_sizes[i - 1], w_sizes[j - 1]) != 1
    ]
    exceptional = [
        (i, math.gcd(n, size))
        for i, size in enumerate(w_sizes, start=1)
        if math.gcd(n, size) != 1
    ]

    if mode == "theorem-A":
        for i, j, g in bad_pairs:
            violations.append(
                Violation("GCD-PAIR", f"{subject}: W indices ({i},{j})",
                          f"gcd({w_sizes[i - 1]}, {w_sizes[j - 1]}) = {g} != 1")
            )
        stats["exceptional_index"] = exceptional[0][0] if exceptional else None
        stats["exceptional_gcd"] = exceptional[0][1] if exceptional else 1
        for i, g in exceptional[1:]:
            violations.append(
                Violation("GCD-N-EXTRA", f"{subject}: W index {i}",
                          f"gcd(n={n}, {w_sizes[i - 1]}) = {g} at a second index")
            )
    else:
        # every factor standard: one non-coprime pair is permitted
        stats["allowed_pair"] = bad_pairs[0][:2] if bad_pairs else None
        stats["exceptional_index"] = None
        stats["exceptional_gcd"] = 1
        for i, j, g in bad_pairs[1:]:
            violations.append(
                Violation("GCD-PAIR", f"{subject}: W indices ({i},{j})",
                          f"gcd({w_sizes[i - 1]}, {w_sizes[j - 1]}) = {g} "
                          "at a second pair")
            )

    return Report(subject, _verdict(violations), tuple(violations), stats)


def chain_invariant_check(seed: Module, lim: OrbitLimits = OrbitLimits()) -> Report:
    """The non-coprime gcd is the same at every orbit member of the seed.

    For every member of the bounded orbit, the coprimality check must pass
    and gcd(n, prod of the m_i) must equal its value at the seed; a seed
    with a single simple factor additionally forbids any non-coprime index
    anywhere in its orbit.
    """
    if len(seed.summands) != 1:
        raise ValueError("chain_invariant_check needs an irreducible seed")
    subject = format_module(seed)
    base = theorem_A_check(seed)
    if base.verdict != "pass":
        return Report(subject, "fail", base.violations, {"stage": "seed", **base.stats})

    n = base.stats["n"]
    g_ref = math.gcd(n, math.prod(base.stats["w_sizes"]))
    one_simple = len(seed.group.factors) == 1

    violations: list[Violation] = []
    member_gcds: list[int] = []
    frag = enumerate_orbit(canonical_form(seed), lim)
    for idx, mem in enumerate(frag.members):
        rep = theorem_A_check(mem.module)
        where = f"member {idx} (depth {mem.depth}) of orbit of {subject}"
        violations.extend(
            Violation(v.code, f"{where}; {v.location}", v.detail) for v in rep.violations
        )
        if rep.verdict == "fail":
            continue
        e = math.gcd(rep.stats["n"], math.prod(rep.stats["w_sizes"]))
        member_gcds.append(e)
        if e != g_ref:
            violations.append(
                Violation("GCD-DRIFT", where,
                          f"member gcd {e} != seed gcd {g_ref}")
            )
        if one_simple and rep.stats["exceptional_index"] is not None:
            violations.append(
                Violation(
                    "GCD-N-EXTRA", where,
                    f"one-simple seed requires gcd(n, m_i) = 1 for every i, "
                    f"found gcd {rep.stats['exceptional_gcd']} at index "
                    f"{rep.stats['exceptional_index']}",
                )
            )

    stats = {
        "members": len(frag.members),
        "max_depth": max((mem.depth for mem in frag.members), default=0),
        "n": n,
        "reference_gcd": g_ref,
        "member_gcds": tuple(member_gcds),
        "one_simple_seed": one_simple,
        "truncated_steps": frag.truncated_steps,
        "truncated_dim": frag.truncated_dim,
        "truncated_nodes": frag.truncated_nodes,
    }
    return Report(subject, _verdict(violations), tuple(violations), stats)


# ---------------------------------------------------------------------------
# the non-existence scan


def _default_scan_seeds() -> list[tuple[str, Module]]:
    seeds = [(i, catalog_instantiate(i)) for i in ("SK I-4", "SK I-8", "SK I-11")]
    for n, m in ((1, 2), (1, 3), (2, 4), (2, 5), (3, 7)):
        seeds.append((f"SK III-2({n},{m})", catalog_instantiate("SK III-2", n=n, m=m)))
    seeds.append(("SK III-3(2)", catalog_instantiate("SK III-3", n=2)))
    seeds.append(("SK III-4(2)", catalog_instantiate("SK III-4", n=2)))
    seeds.append(("SK III-5(3,1)", catalog_instantiate("SK III-5", n=3, m=1)))
    seeds.append(("SK III-6", catalog_instantiate("SK III-6")))
    return seeds


def theorem_B_scan(
    lim: OrbitLimits = OrbitLimits(max_steps=5, max_dim=10**7),
    seeds: list[tuple[str, Module]] | None = None,
) -> Report:
    """No bounded orbit of the stored seeds repeats an SL size.

    Every orbit member of every seed must be free of two A-type factors of
    equal rank >= 1, and a seed with a non-A factor must never reach an
    all-A group shape.  The scan corroborates a universal statement on a
    finite fragment only; truncation flags say how far it looked.
    """
    if seeds is None:
        seeds = _default_scan_seeds()
    violations: list[Violation] = []
    per_seed: dict[str, int] = {}
    truncated = False
    total = 0
    for label, seed in seeds:
        frag = enumerate_orbit(canonical_form(seed), lim)
        truncated = truncated or frag.truncated
        per_seed[label] = len(frag.members)
        total += len(frag.members)
        seed_non_a = any(f.family != "A" for f in seed.group.factors)
        for idx, mem in enumerate(frag.members):
            where = f"{label}: member {idx} (depth {mem.depth})"
            factors = mem.module.group.factors
            a_ranks = [f.rank for f in factors if f.family == "A"]
            repeated = sorted({r for r in a_ranks if a_ranks.count(r) >= 2})
            for r in repeated:
                violations.append(
                    Violation("EQUAL-FACTORS", where,
                              f"two SL{r + 1} factors "
                              f"({format_module(mem.module)})")
                )
            if seed_non_a and factors and all(f.family == "A" for f in factors):
                violations.append(
                    Violation("SHAPE", where,
                              "a seed with a non-A factor reached an all-A group")
                )

    stats = {
        "seeds": len(seeds),
        "members_total": total,
        "members_per_seed": per_seed,
        "truncated": truncated,
        "max_steps": lim.max_steps,
        "max_dim": lim.max_dim,
    }
    return Report("theorem-B scan", _verdict(violations), tuple(violations), stats)


# ---------------------------------------------------------------------------
# catalog consistency


def verify_catalog(entries=None) -> Report:
    """Dimension identities, flag consistency and reducedness of the tables.

    For every sampled instance of every equal-dimension entry the group and
    module dimensions must agree, the torus must be positive-dimensional,
    the entry must be flagged regular, and a one-simple entry must have an
    A-type simple part.  Entries flagged reduced must admit no shrinking
    castling move.  The generic-stabilizer bookkeeping dim G - dim V_j >= 0
    is cross-checked per summand.
    """
    if entries is None:
        entries = catalog_list()
    violations: list[Violation] = []
    etale_entries = 0
    instances = 0
    stabilizer_checks = 0
    for e in entries:
        if "etale" in e.flags:
            etale_entries += 1
        for ps in e.samples:
            m = e.build(**ps)
            instances += 1
            loc = f"{e.id} {ps}" if ps else e.id
            if "etale" in e.flags:
                g, v = group_dim(m), module_dim(m)
                if g != v:
                    violations.append(
                        Violation("DIM-MISMATCH", loc, f"dim G = {g} != dim V = {v}")
                    )
                if m.group.torus_dim < 1:
                    violations.append(
                        Violation("SHAPE", loc, "an equal-dimension entry needs scalars")
                    )
                if "regular" not in e.flags:
                    violations.append(
                        Violation("SHAPE", loc,
                                  "an equal-dimension entry must be flagged regular")
                    )
                if len(m.group.factors) == 1 and m.group.factors[0].family != "A":
                    violations.append(
                        Violation("SHAPE", loc,
                                  "a one-simple equal-dimension entry must have an "
                                  f"A-type factor, found {m.group.factors[0].family}")
                    )
                for j in range(len(m.summands)):
                    stabilizer_checks += 1
                    slack = group_dim(m) - summand_dim(m, j)
                    if slack < 0:
                        violations.append(
                            Violation("DIM-MISMATCH", f"{loc} summand {j}",
                                      f"dim G - dim V_{j} = {slack} < 0")
                        )
            if "reduced" in e.flags and not is_reduced(m):
                violations.append(
                    Violation("NOT-REDUCED", loc, "a shrinking castling move exists")
                )

    stats = {
        "entries": len(list(entries)),
        "etale_entries": etale_entries,
        "instances": instances,
        "stabilizer_checks": stabilizer_checks,
    }
    return Report("catalog", _verdict(violations), tuple(violations), stats)


# ---------------------------------------------------------------------------
# decomposition proxy


def _component(m: Module, j: int) -> Module:
    """Summand j as a module of its own, dropping trivially-acting factors."""
    s = m.summands[j]
    keep = [(f, w) for f, w in zip(m.group.factors, s.weights) if not w.is_zero]
    return Module(
        GroupShape(m.group.torus_dim, tuple(f for f, _ in keep)),
        (Summand(tuple(w for _, w in keep), s.slots),),
    )


_REGULAR_IRREDUCIBLE = ("SK I-4", "SK I-8", "SK I-11")


def baues_decomposition_check(m: Module, lim: OrbitLimits = OrbitLimits()) -> Report:
    """Every proper submodule decomposes into known non-regular components.

    Requires an equal-dimension module with a one-dimensional torus.  Each
    proper nonempty summand subset is reduced and its irreducible
    components are matched against the non-regular families; a component
    that instead reproduces a regular irreducible catalog entry is a
    violation, and a component the catalog cannot classify makes the
    verdict inconclusive rather than a failure.
    """
    if not is_etale_candidate(m):
        raise ValueError("decomposition check applies to equal-dimension modules only")
    if m.group.torus_dim != 1:
        raise ValueError(
            f"decomposition check needs a one-dimensional torus "
            f"(got {m.group.torus_dim})"
        )
    subject = format_module(m)
    k = len(m.summands)
    violations: list[Violation] = []
    unclassified: list[str] = []
    matches: dict[str, int] = {}
    component_cache: dict[tuple, tuple[str, tuple | None]] = {}
    subsets = 0
    components = 0

    for bits in range(1, (1 << k) - 1):  # proper nonempty subsets
        subsets += 1
        chosen = [j for j in range(k) if bits >> j & 1]
        sub = Module(m.group, tuple(m.summands[j] for j in chosen))
        red = reduce_module(sub)
        for j in range(len(red.summands)):
            components += 1
            comp = canonical_form(_component(red, j))
            key = canonical_key(comp)
            if key not in component_cache:
                hit = match_nonregular_family(comp)
                if hit is not None:
                    label, params = hit
                    shown = (label, tuple(sorted(params.items())))
                    component_cache[key] = ("match", shown)
                else:
                    regular = None
                    for entry_id in _REGULAR_IRREDUCIBLE:
                        res = castling_equivalent(
                            comp, catalog_instantiate(entry_id), lim
                        )
                        if res.found:
                            regular = entry_id
                            break
                    component_cache[key] = ("regular", regular) if regular else ("unknown", None)
            kind, data = component_cache[key]
            where = f"subset {tuple(i + 1 for i in chosen)} component {j + 1}"
            if kind == "match":
                label, params = data
                name = label + (str(dict(params)) if params else "")
                matches[name] = matches.get(name, 0) + 1
            elif kind == "regular":
                violations.append(
                    Violation("UNMATCHED-COMPONENT", f"{subject}: {where}",
                              f"component {format_module(comp)} matches no "
                              f"non-regular family but is castling-equivalent "
                              f"to the regular entry {data}")
                )
            else:
                expr = format_module(comp)
                if expr not in unclassified:
                    unclassified.append(expr)

    stats = {
        "subsets": subsets,
        "components": components,
        "distinct_components": len(component_cache),
        "matches": matches,
        "unclassified": unclassified,
    }
    return Report(
        subject,
        _verdict(violations, inconclusive=bool(unclassified)),
        tuple(violations),
        stats,
    )
