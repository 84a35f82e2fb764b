"""Embedded classification tables with citations and parametric matchers.

The catalog holds three groups of entries:

* the thirteen equal-dimension ("etale") modules: three irreducible ones,
  four one-simple families and six two-simple ones;
* the six non-regular irreducible families used by the decomposition and
  scan verifiers (the first of them is parametric in an arbitrary simple
  group, so only concrete instances are stored);
* alias records for the classically noted coincidences between entries.

Every entry carries flags (``etale``/``regular``/``nonregular``/
``reduced``/``irreducible``), a table citation, a builder with explicit
parameter ranges, and sampled parameter sets used by the verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import (
    Module,
    SimpleFactor,
    Weight,
    canonical_form,
    equivalent,
    module,
)
from .grammar import format_module

__all__ = [
    "FLAGS",
    "CatalogEntry",
    "catalog_list",
    "catalog_entry",
    "catalog_instantiate",
    "match_nonregular_family",
    "export_catalog",
]

#: Flag vocabulary in the order used for serialization.
FLAGS = ("etale", "regular", "nonregular", "reduced", "irreducible")

_W = Weight.fundamental
_Z = Weight.zero


@dataclass(frozen=True)
class CatalogEntry:
    """One classified module (or parametric family of modules)."""

    id: str  # display id, e.g. "Ks A-2(n)"
    label: str  # bare lookup label, e.g. "Ks A-2"
    flags: frozenset[str]
    source: str
    params: tuple[str, ...] = ()
    build: Callable[..., Module] = field(default=None, repr=False, compare=False)
    #: In-range parameter samples used by the verifiers (may be empty dicts).
    samples: tuple[dict, ...] = ({},)
    #: Parameters of the representative instance used for display/export.
    representative: dict = field(default_factory=dict)
    aliases: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        unknown = self.flags - set(FLAGS)
        if unknown:
            raise ValueError(f"unknown flags {sorted(unknown)} on {self.id}")
        if {"regular", "nonregular"} <= self.flags:
            raise ValueError(f"{self.id} cannot be both regular and nonregular")


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


# ---------------------------------------------------------------------------
# builders


def _sk_i4() -> Module:
    return module(1, [SimpleFactor("A", 1)], [([_W(0, 3)], {0})])


def _sk_i8() -> Module:
    return module(1, [SimpleFactor("A", 2), SimpleFactor("A", 1)], [([_W(0, 2), _W(0)], {0})])


def _sk_i11() -> Module:
    return module(1, [SimpleFactor("A", 4), SimpleFactor("A", 3)], [([_W(1), _W(0)], {0})])


def _ks_a2(n: int) -> Module:
    _need(n >= 2, f"Ks A-2 requires n >= 2 (got n={n})")
    f = SimpleFactor("A", n - 1)
    return module(1, [f], [([_W(0)], {0})] * n)


def _ks_a3(n: int) -> Module:
    _need(n >= 2, f"Ks A-3 requires n >= 2 (got n={n})")
    f = SimpleFactor("A", n - 1)
    return module(n + 1, [f], [([_W(0)], {i}) for i in range(n + 1)])


def _ks_a4(n: int) -> Module:
    _need(n >= 2, f"Ks A-4 requires n >= 2 (got n={n})")
    f = SimpleFactor("A", n - 1)
    summands = [([_W(0)], {i}) for i in range(n)]
    summands.append(([_W(n - 2)], {n}))  # dual of the standard weight
    return module(n + 1, [f], summands)


def _ks_a11() -> Module:
    return module(2, [SimpleFactor("A", 1)], [([_W(0, 2)], {0}), ([_W(0)], {1})])


def _ki_i1() -> Module:
    a3, a1 = SimpleFactor("A", 3), SimpleFactor("A", 1)
    return module(2, [a3, a1], [([_W(1), _W(0)], {0}), ([_W(0), _W(0)], {1})])


def _ki_i2() -> Module:
    a3, a1 = SimpleFactor("A", 3), SimpleFactor("A", 1)
    return module(
        2, [a3, a1], [([_W(1), _W(0)], {0}), ([_W(0), _Z], {1}), ([_W(0), _Z], {1})]
    )


def _ki_i6(variant: int = 0) -> Module:
    _need(variant in (0, 1), f"KI I-6 variant must be 0 or 1 (got {variant})")
    a4, a1 = SimpleFactor("A", 4), SimpleFactor("A", 1)
    third = _W(0) if variant == 0 else _W(3)  # standard weight or its dual
    return module(
        3, [a4, a1], [([_W(1), _W(0)], {0}), ([_W(3), _Z], {1}), ([third, _Z], {2})]
    )


def _ki_i16() -> Module:
    c2, a2 = SimpleFactor("C", 2), SimpleFactor("A", 2)
    return module(
        2, [c2, a2], [([_W(0), _W(0)], {0}), ([_W(1), _Z], {1}), ([_Z, _W(1)], {1})]
    )


def _ki_i18() -> Module:
    c2, a1 = SimpleFactor("C", 2), SimpleFactor("A", 1)
    return module(
        3, [c2, a1], [([_W(1), _W(0)], {0}), ([_W(0), _Z], {1}), ([_Z, _W(0)], {2})]
    )


def _ki_i19() -> Module:
    c2, a3 = SimpleFactor("C", 2), SimpleFactor("A", 3)
    return module(
        3, [c2, a3], [([_W(1), _W(0)], {0}), ([_W(0), _Z], {1}), ([_Z, _W(2)], {2})]
    )


#: Stored instances of the non-regular family with an arbitrary simple factor:
#: (factor, weight, minimal tensor partner size) -- the family itself ranges
#: over every irreducible action that is not a standard one, so it cannot be
#: enumerated and only representative instances are matchable.
_III1_INSTANCES: tuple[tuple[SimpleFactor, Weight, int], ...] = (
    (SimpleFactor("C", 2), _W(0), 5),  # 4-dimensional symplectic action, partner SL5
    (SimpleFactor("A", 1), _W(0, 3), 5),  # 4-dimensional cubic action, partner SL5
    (SimpleFactor("B", 3), _W(2), 9),  # 8-dimensional spin action, partner SL9
)


def _sk_iii1(instance: int = 1) -> Module:
    _need(
        1 <= instance <= len(_III1_INSTANCES),
        f"SK III-1 stores instances 1..{len(_III1_INSTANCES)} (got {instance})",
    )
    f, w, m = _III1_INSTANCES[instance - 1]
    return module(1, [f, SimpleFactor("A", m - 1)], [([w, _W(0)], {0})])


def _sk_iii2(n: int, m: int) -> Module:
    _need(n >= 1 and m >= 2 * n, f"SK III-2 requires m >= 2n >= 2 (got n={n}, m={m})")
    if n == 1:
        return module(1, [SimpleFactor("A", m - 1)], [([_W(0)], {0})])
    return module(
        1, [SimpleFactor("A", n - 1), SimpleFactor("A", m - 1)], [([_W(0), _W(0)], {0})]
    )


def _sk_iii3(n: int) -> Module:
    _need(n >= 2, f"SK III-3 requires n >= 2 (got n={n})")
    return module(1, [SimpleFactor("A", 2 * n)], [([_W(1)], {0})])


def _sk_iii4(n: int) -> Module:
    _need(n >= 2, f"SK III-4 requires n >= 2 (got n={n})")
    return module(
        1, [SimpleFactor("A", 1), SimpleFactor("A", 2 * n)], [([_W(0), _W(1)], {0})]
    )


def _sk_iii5(n: int, m: int) -> Module:
    _need(
        m >= 0 and n >= max(2, 2 * m + 1),
        f"SK III-5 requires n >= max(2, 2m+1) and m >= 0 (got n={n}, m={m})",
    )
    if m == 0:
        return module(1, [SimpleFactor("C", n)], [([_W(0)], {0})])
    return module(
        1, [SimpleFactor("C", n), SimpleFactor("A", 2 * m)], [([_W(0), _W(0)], {0})]
    )


def _sk_iii6() -> Module:
    return module(1, [SimpleFactor("D", 5)], [([_W(4)], {0})])  # half-spin module


# ---------------------------------------------------------------------------
# the tables


_ETALE_IRR = frozenset({"etale", "regular", "reduced", "irreducible"})
_ETALE_RED = frozenset({"etale", "regular", "reduced"})
_ETALE = frozenset({"etale", "regular"})
_NONREG = frozenset({"nonregular", "reduced", "irreducible"})

_SK = "Sato-Kimura 1977, Table {}"
_KS = "Kimura 1983, Table {}"
_KI = "Kimura-Kasai-Inuzuka-Yasukura 1988, Type-I Table, {}"


def _entry(id, flags, source, build, params=(), samples=({},), representative=None, aliases=()):
    label = id.split("(")[0].strip()
    return CatalogEntry(
        id=id,
        label=label,
        flags=flags,
        source=source,
        params=tuple(params),
        build=build,
        samples=tuple(samples),
        representative=dict(representative or {}),
        aliases=tuple(aliases),
    )


_N_SAMPLES = tuple({"n": n} for n in range(2, 13))

_ENTRIES: tuple[CatalogEntry, ...] = (
    _entry("SK I-4", _ETALE_IRR, _SK.format("I-4"), _sk_i4),
    _entry("SK I-8", _ETALE_IRR, _SK.format("I-8"), _sk_i8),
    _entry("SK I-11", _ETALE_IRR, _SK.format("I-11"), _sk_i11),
    _entry("Ks A-2(n)", _ETALE_RED, _KS.format("A-2"), _ks_a2, ("n",), _N_SAMPLES,
           {"n": 2}, aliases=("Ks A-20(n=1)",)),
    # A-3 castles to a pure torus of smaller dimension, so it is not reduced;
    # A-4 coincides with A-3 at n = 2 (the standard weight of a rank-one
    # factor is self-dual), so it cannot be flagged reduced either.
    _entry("Ks A-3(n)", _ETALE, _KS.format("A-3"), _ks_a3, ("n",), _N_SAMPLES, {"n": 2}),
    _entry("Ks A-4(n)", _ETALE, _KS.format("A-4"), _ks_a4, ("n",), _N_SAMPLES,
           {"n": 3}, aliases=("Ks A-1(n=2)",)),
    _entry("Ks A-11(n=2)", _ETALE_RED, _KS.format("A-11"), _ks_a11,
           aliases=("Ks A-12(n=2)",)),
    _entry("KI I-1", _ETALE_RED, _KI.format("I-1"), _ki_i1),
    _entry("KI I-2", _ETALE_RED, _KI.format("I-2"), _ki_i2),
    _entry("KI I-6", _ETALE_RED, _KI.format("I-6"), _ki_i6, ("variant",),
           ({"variant": 0}, {"variant": 1}), {"variant": 0}, aliases=("KI I-6*",)),
    _entry("KI I-16", _ETALE_RED, _KI.format("I-16"), _ki_i16),
    _entry("KI I-18", _ETALE_RED, _KI.format("I-18"), _ki_i18),
    _entry("KI I-19", _ETALE_RED, _KI.format("I-19"), _ki_i19),
    _entry("SK III-1", _NONREG, _SK.format("III-1"), _sk_iii1, ("instance",),
           ({"instance": 1}, {"instance": 2}, {"instance": 3}), {"instance": 1}),
    _entry("SK III-2(n,m)", _NONREG, _SK.format("III-2"), _sk_iii2, ("n", "m"),
           ({"n": 1, "m": 2}, {"n": 1, "m": 3}, {"n": 2, "m": 4}, {"n": 2, "m": 5},
            {"n": 3, "m": 7}, {"n": 4, "m": 8}, {"n": 4, "m": 10}, {"n": 5, "m": 10}),
           {"n": 1, "m": 2}),
    _entry("SK III-3(n)", _NONREG, _SK.format("III-3"), _sk_iii3, ("n",),
           tuple({"n": n} for n in range(2, 7)), {"n": 2}),
    _entry("SK III-4(n)", _NONREG, _SK.format("III-4"), _sk_iii4, ("n",),
           tuple({"n": n} for n in range(2, 7)), {"n": 2}),
    _entry("SK III-5(n,m)", _NONREG, _SK.format("III-5"), _sk_iii5, ("n", "m"),
           ({"n": 2, "m": 0}, {"n": 3, "m": 0}, {"n": 3, "m": 1}, {"n": 4, "m": 1},
            {"n": 5, "m": 2}, {"n": 7, "m": 3}, {"n": 9, "m": 4}),
           {"n": 3, "m": 1}),
    _entry("SK III-6", _NONREG, _SK.format("III-6"), _sk_iii6),
)

_BY_LABEL = {e.label: e for e in _ENTRIES}

#: Noted coincidences: alias label -> (target label, fixed parameters).
_ALIAS_TARGETS = {
    "Ks A-1": ("Ks A-4", {"n": 2}),
    "Ks A-12": ("Ks A-11", {}),
    "Ks A-20": ("Ks A-2", {"n": 2}),
    "KI I-6*": ("KI I-6", {"variant": 1}),
}


# ---------------------------------------------------------------------------
# operations


def catalog_list(flag_filter: frozenset[str] | set[str] = frozenset()) -> list[CatalogEntry]:
    """Entries whose flags contain the filter, in fixed table order."""
    wanted = frozenset(flag_filter)
    unknown = wanted - set(FLAGS)
    if unknown:
        raise ValueError(f"unknown flags {sorted(unknown)}; expected a subset of {FLAGS}")
    return [e for e in _ENTRIES if wanted <= e.flags]


def catalog_entry(entry_id: str) -> CatalogEntry:
    """Entry by id or bare label; raises KeyError for unknown ids."""
    label = entry_id.split("(")[0].strip()
    if label not in _BY_LABEL:
        raise KeyError(f"unknown catalog id {entry_id!r}")
    return _BY_LABEL[label]


def catalog_instantiate(entry_id: str, **params) -> Module:
    """Concrete module for an entry id (or alias) and in-range parameters."""
    label = entry_id.split("(")[0].strip()
    if label in _ALIAS_TARGETS:
        target, fixed = _ALIAS_TARGETS[label]
        if params:
            raise ValueError(f"alias {entry_id!r} fixes its parameters; none may be passed")
        return _BY_LABEL[target].build(**fixed)
    entry = catalog_entry(label)
    try:
        return entry.build(**params)
    except TypeError:
        raise ValueError(
            f"{entry.id} takes parameters {entry.params}, got {sorted(params)}"
        ) from None


def match_nonregular_family(m: Module):
    """The unique non-regular family and parameters equivalent to m, or None.

    The input must be irreducible (a single summand).  Matching is by
    canonical-form equality against an instantiation whose parameters are
    read off the factor shapes, so arbitrarily large in-range parameters
    are recognized.  The family with an arbitrary simple factor is matched
    against its stored instances only.
    """
    if len(m.summands) != 1:
        raise ValueError("match_nonregular_family needs an irreducible module")
    target = canonical_form(m)

    guesses: list[tuple[str, dict]] = []
    a_ranks = sorted(f.rank for f in target.group.factors if f.family == "A")
    families = {f.family for f in target.group.factors}

    if families <= {"A"}:
        if len(a_ranks) == 1:
            r = a_ranks[0]
            guesses.append(("SK III-2", {"n": 1, "m": r + 1}))
            if r % 2 == 0:
                guesses.append(("SK III-3", {"n": r // 2}))
        elif len(a_ranks) == 2:
            lo, hi = a_ranks
            guesses.append(("SK III-2", {"n": lo + 1, "m": hi + 1}))
            if lo == 1 and hi % 2 == 0:
                guesses.append(("SK III-4", {"n": hi // 2}))
    if "C" in families:
        c_rank = next(f.rank for f in target.group.factors if f.family == "C")
        if len(a_ranks) == 0:
            guesses.append(("SK III-5", {"n": c_rank, "m": 0}))
        elif len(a_ranks) == 1 and a_ranks[0] % 2 == 0:
            guesses.append(("SK III-5", {"n": c_rank, "m": a_ranks[0] // 2}))
    if "D" in families:
        guesses.append(("SK III-6", {}))
    for i in range(1, len(_III1_INSTANCES) + 1):
        guesses.append(("SK III-1", {"instance": i}))

    matches = []
    for label, params in guesses:
        try:
            inst = catalog_instantiate(label, **params)
        except ValueError:
            continue
        if equivalent(target, inst):
            matches.append((label, dict(params)))
    if len(matches) > 1:
        raise AssertionError(f"non-unique family match for {m}: {matches}")
    return matches[0] if matches else None


def export_catalog(entries=None) -> list[str]:
    """One tab-separated line per entry: id, expression, flags, source.

    The expression column is the representative instance rendered by the
    grammar printer and round-trips through the parser bit-exactly.
    """
    lines = []
    for e in entries if entries is not None else _ENTRIES:
        expr = format_module(e.build(**e.representative))
        flags = ",".join(f for f in FLAGS if f in e.flags)
        lines.append("\t".join((e.id, expr, flags, e.source)))
    return lines
