"""Module-expression grammar: tokenizer, parser and printer.

An expression names a reductive group and the summands it acts on::

    GL1^2 x SL4 x SL2 : (w2 # w1) + (w1 # 1) + (w1 # 1)

Group atoms are ``GL1`` (optionally ``GL1^k`` for a k-dimensional torus),
classical names ``SL``/``Sp``/``SO``/``Spin`` with a size subscript, or one
of ``E6 E7 E8 F4 G2``.  ``GLn`` with n >= 2 is input sugar for
``GL1 x SLn``; ``SL1`` is accepted but contributes no factor and admits
only the trivial rep.  ``SOn``/``Spinn`` require n >= 5 odd or n >= 6 even.

Summands are separated by ``+`` and may be parenthesised.  Inside a summand
one rep per simple factor is given, separated by ``#``.  A rep is ``1``
(trivial) or a comma-separated list of ``[coeff]w[index]`` terms with
1-based fundamental-weight indices, optionally ending in ``*`` for the dual
rep (resolved to explicit weight coordinates while parsing; the printer
never emits ``*``).

``@`` followed by 1-based torus-slot numbers attaches scalar slots to a
summand; ``@0`` means no slot.  Tags are all-or-nothing across summands.
Without tags, summand i defaults to the single slot min(i, k) where k is
the torus dimension -- so a lone GL1 is shared by every summand and a
torus of rank equal to the number of summands pairs them off one by one.
Fewer summands than torus slots cannot be covered by the default and is a
parse error without explicit tags.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Module,
    SimpleFactor,
    Weight,
    dual_weight,
    module,
)

__all__ = ["ParseError", "parse_module", "format_module"]


class ParseError(ValueError):
    """Syntax or semantic error in a module expression, with position."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (at position {pos})")
        self.position = pos


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "word", or the symbol character itself
    text: str
    pos: int


_SYMBOLS = set("^:+#@,*()")


def _tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        start = i
        if ch.isdigit():
            while i < n and text[i].isdigit():
                i += 1
            out.append(_Token("num", text[start:i], start))
        elif ch.isalpha():
            while i < n and text[i].isalpha():
                i += 1
            out.append(_Token("word", text[start:i], start))
        elif ch in _SYMBOLS:
            out.append(_Token(ch, ch, start))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", start)
    return out


# ---------------------------------------------------------------------------
# parser

#: Fixed-size exceptional atoms: word -> (required subscript, family).
_EXCEPTIONAL = {"E": ((6, "E6"), (7, "E7"), (8, "E8")), "F": ((4, "F4"),), "G": ((2, "G2"),)}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    # -- token plumbing

    def peek(self, ahead: int = 0) -> _Token | None:
        j = self.i + ahead
        return self.tokens[j] if j < len(self.tokens) else None

    def take(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {what} but the expression ended", len(self.text))
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text!r}", tok.pos)
        self.i += 1
        return tok

    def take_number(self, what: str) -> int:
        return int(self.take("num", what).text)

    def at(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    # -- group

    def parse_group(self) -> tuple[int, list[SimpleFactor | None]]:
        """Returns (torus_dim, rep columns); None columns are dropped SL1."""
        torus = 0
        columns: list[SimpleFactor | None] = []
        while True:
            torus_add, col = self.parse_atom()
            torus += torus_add
            if col != "torus-only":
                columns.append(col)
            tok = self.peek()
            if tok is not None and tok.kind == "word" and tok.text == "x":
                self.i += 1
                continue
            return torus, columns

    def parse_atom(self):
        tok = self.take("word", "a group atom")
        name = tok.text
        if name in _EXCEPTIONAL:
            sub = self.take_number(f"the size of {name}")
            for required, family in _EXCEPTIONAL[name]:
                if sub == required:
                    return 0, SimpleFactor(family, required)
            raise ParseError(f"unknown group {name}{sub}", tok.pos)
        if name == "GL":
            n = self.take_number("the size of GL")
            if n == 0:
                raise ParseError("invalid group size GL0", tok.pos)
            if n == 1:
                if self.at("^"):
                    self.i += 1
                    k = self.take_number("a torus rank after '^'")
                    if k < 1:
                        raise ParseError("torus rank after '^' must be >= 1", tok.pos)
                    return k, "torus-only"
                return 1, "torus-only"
            return 1, SimpleFactor("A", n - 1)  # GLn = GL1 x SLn
        if name == "SL":
            n = self.take_number("the size of SL")
            if n == 0:
                raise ParseError("invalid group size SL0", tok.pos)
            if n == 1:
                return 0, None  # trivial group: keeps a rep column, admits only '1'
            return 0, SimpleFactor("A", n - 1)
        if name == "Sp":
            n = self.take_number("the size of Sp")
            if n < 1:
                raise ParseError("invalid group size Sp0", tok.pos)
            return 0, SimpleFactor("C", n)
        if name in ("SO", "Spin"):
            n = self.take_number(f"the size of {name}")
            if n >= 5 and n % 2 == 1:
                return 0, SimpleFactor("B", (n - 1) // 2)
            if n >= 6 and n % 2 == 0:
                return 0, SimpleFactor("D", n // 2)
            raise ParseError(
                f"{name}{n} is not supported; use SL/Sp names for sizes below SO5", tok.pos
            )
        raise ParseError(f"unknown group atom {name!r}", tok.pos)

    # -- summands

    def parse_rep(self):
        """Returns 'trivial' or (entries, dual_flag)."""
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a rep but the expression ended", len(self.text))
        if tok.kind == "num":
            nxt = self.peek(1)
            if nxt is None or nxt.kind != "word" or nxt.text != "w":
                if tok.text == "1":
                    self.i += 1
                    return "trivial"
                raise ParseError(f"expected 'w' after the coefficient {tok.text}", tok.pos)
        entries: dict[int, int] = {}
        while True:
            coeff = 1
            if self.at("num"):
                coeff = self.take_number("a coefficient")
                if coeff == 0:
                    raise ParseError("weight coefficients must be positive", tok.pos)
            wtok = self.take("word", "'w'")
            if wtok.text != "w":
                raise ParseError(f"expected 'w', found {wtok.text!r}", wtok.pos)
            index = self.take_number("a fundamental-weight index")
            if index == 0:
                raise ParseError("fundamental-weight indices are 1-based", wtok.pos)
            if index - 1 in entries:
                raise ParseError(f"duplicate weight index w{index}", wtok.pos)
            entries[index - 1] = coeff
            if self.at(","):
                self.i += 1
                continue
            break
        dual = False
        if self.at("*"):
            self.i += 1
            dual = True
        return tuple(sorted(entries.items())), dual

    def parse_summand(self, columns: list[SimpleFactor | None], torus_dim: int):
        start = self.peek().pos if self.peek() else len(self.text)
        parens = False
        if self.at("("):
            self.i += 1
            parens = True
        reps = [self.parse_rep()]
        while self.at("#"):
            self.i += 1
            reps.append(self.parse_rep())
        if parens:
            self.take(")", "')'")
        slots: frozenset[int] | None = None
        if self.at("@"):
            self.i += 1
            nums = [self.take_number("a torus-slot number")]
            while self.at(","):
                self.i += 1
                nums.append(self.take_number("a torus-slot number"))
            if nums == [0]:
                slots = frozenset()
            elif 0 in nums:
                raise ParseError("'@0' (no slot) cannot be combined with other slots", start)
            else:
                if len(set(nums)) != len(nums):
                    raise ParseError("duplicate torus-slot number", start)
                for s in nums:
                    if s > torus_dim:
                        raise ParseError(
                            f"torus slot {s} exceeds the torus rank {torus_dim}", start
                        )
                slots = frozenset(s - 1 for s in nums)

        # map reps onto the factor columns
        if not columns:
            if len(reps) != 1 or reps[0] != "trivial":
                raise ParseError("a group with no simple factor admits only the rep '1'", start)
            weights: list[Weight] = []
        else:
            if len(reps) != len(columns):
                raise ParseError(
                    f"summand has {len(reps)} reps but the group has "
                    f"{len(columns)} simple factors",
                    start,
                )
            weights = []
            for rep, col in zip(reps, columns):
                if col is None:  # dropped SL1 column
                    if rep != "trivial":
                        raise ParseError("SL1 admits only the trivial rep '1'", start)
                    continue
                if rep == "trivial":
                    weights.append(Weight.zero)
                    continue
                entries, dual = rep
                for i, _ in entries:
                    if i >= col.rank:
                        raise ParseError(
                            f"weight index w{i + 1} out of range for a rank-{col.rank} factor",
                            start,
                        )
                w = Weight(entries)
                if dual:
                    w = dual_weight(col, w)
                weights.append(w)
        return weights, slots

    def parse(self) -> Module:
        torus, columns = self.parse_group()
        self.take(":", "':'")
        summands = [self.parse_summand(columns, torus)]
        while self.at("+"):
            self.i += 1
            summands.append(self.parse_summand(columns, torus))
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)

        tagged = [s for _, s in summands if s is not None]
        if tagged and len(tagged) != len(summands):
            raise ParseError("either tag every summand with '@' or none", 0)
        if not tagged:
            k, s = torus, len(summands)
            if k == 0:
                slot_sets = [frozenset()] * s
            elif s >= k:
                slot_sets = [frozenset({min(i, k) - 1}) for i in range(1, s + 1)]
            else:
                raise ParseError(
                    "'@' slot tags are required when there are fewer summands "
                    "than torus slots",
                    0,
                )
        else:
            slot_sets = [s for _, s in summands]

        factors = [c for c in columns if c is not None]
        return module(torus, factors, [(w, s) for (w, _), s in zip(summands, slot_sets)])


def parse_module(text: str) -> Module:
    """Parse a module expression; raises ParseError with a position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer


_FACTOR_NAMES = {"E6": "E6", "E7": "E7", "E8": "E8", "F4": "F4", "G2": "G2"}


def _factor_name(f: SimpleFactor) -> str:
    if f.family == "A":
        return f"SL{f.rank + 1}"
    if f.family == "B":
        return f"SO{2 * f.rank + 1}"
    if f.family == "C":
        return f"Sp{f.rank}"
    if f.family == "D":
        return f"SO{2 * f.rank}"
    return _FACTOR_NAMES[f.family]


def _rep_text(w: Weight) -> str:
    if w.is_zero:
        return "1"
    return ",".join(f"w{i + 1}" if c == 1 else f"{c}w{i + 1}" for i, c in w.entries)


def _default_slots(torus_dim: int, count: int) -> list[frozenset[int]] | None:
    if torus_dim == 0:
        return [frozenset()] * count
    if count >= torus_dim:
        return [frozenset({min(i, torus_dim) - 1}) for i in range(1, count + 1)]
    return None


def format_module(m: Module) -> str:
    """Render a module in grammar syntax; parse . format is the identity
    up to canonical equivalence."""
    atoms: list[str] = []
    if m.group.torus_dim == 1:
        atoms.append("GL1")
    elif m.group.torus_dim > 1:
        atoms.append(f"GL1^{m.group.torus_dim}")
    atoms.extend(_factor_name(f) for f in m.group.factors)
    if not atoms:
        raise ValueError("cannot format a module whose group has no atoms")

    defaults = _default_slots(m.group.torus_dim, len(m.summands))
    tag = defaults is None or [s.slots for s in m.summands] != defaults
    tag = tag or any(all(w.is_zero for w in s.weights) or not s.weights for s in m.summands)

    parens = len(m.group.factors) >= 2 and len(m.summands) >= 2
    parts: list[str] = []
    for s in m.summands:
        body = " # ".join(_rep_text(w) for w in s.weights) if s.weights else "1"
        if parens:
            body = f"({body})"
        if tag:
            body += "@" + (",".join(str(i + 1) for i in sorted(s.slots)) if s.slots else "0")
        parts.append(body)
    return " x ".join(atoms) + " : " + " + ".join(parts)
