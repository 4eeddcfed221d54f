"""Hereditarily finite nonempty sets over a base carrier.

An HSet is either an Atom wrapping a carrier element or a Node holding a
nonempty, duplicate-free, canonically ordered tuple of child HSets.  Atoms
are leaves: they contain no elements yet are distinct from the empty set,
which is excluded altogether.  Canonical child ordering (a structural sort
key) makes equality, hashing, and memo keys deterministic.

The s-expression wire format is ``(atom "a")`` for atoms and
``(set e1 e2 ...)`` for nodes; parsing re-canonicalizes, so formatting then
parsing is the identity on canonical trees.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Union


@dataclass(frozen=True)
class Atom:
    """Leaf wrapping one element of the base carrier."""

    value: object


@dataclass(frozen=True)
class Node:
    """Nonempty finite set of distinct HSets, children canonically ordered.

    Construction normalizes: children are deduplicated under structural
    equality and sorted by the canonical structural key, so two Nodes built
    from the same children in any order compare and hash equal.
    """

    children: tuple

    def __post_init__(self):
        ordered = _canonical_children(self.children)
        if not ordered:
            raise ValueError("Node requires at least one child")
        object.__setattr__(self, "children", ordered)


HSet = Union[Atom, Node]


def atom(value) -> Atom:
    return Atom(value)


def node(children: Iterable) -> Node:
    return Node(tuple(children))


def _canonical_children(children) -> tuple:
    seen = []
    for c in children:
        if not isinstance(c, (Atom, Node)):
            raise TypeError(f"HSet child expected, got {c!r}")
        if c not in seen:
            seen.append(c)
    return tuple(sorted(seen, key=canon_key))


def _atom_key(value) -> str:
    return f"{type(value).__name__}:{value!r}"


@functools.lru_cache(maxsize=None)
def canon_key(h: HSet):
    """Total deterministic structural sort key: atoms first, then nodes."""
    if isinstance(h, Atom):
        return (0, _atom_key(h.value))
    return (1, tuple(canon_key(c) for c in h.children))


def depth(h: HSet) -> int:
    """Nesting depth: 0 for atoms, 1 + max child depth for nodes."""
    if isinstance(h, Atom):
        return 0
    return 1 + max(depth(c) for c in h.children)


def supp(h: HSet) -> frozenset:
    """Support: the set of carrier elements occurring as atom leaves."""
    if isinstance(h, Atom):
        return frozenset([h.value])
    out = frozenset()
    for c in h.children:
        out |= supp(c)
    return out


def iter_atoms(h: HSet):
    """Yield every Atom leaf (with multiplicity of distinct positions)."""
    if isinstance(h, Atom):
        yield h
    else:
        for c in h.children:
            yield from iter_atoms(c)


# --- s-expression wire format ---------------------------------------------

def hset_to_sexpr(h: HSet, fmt: Callable[[object], str] = str) -> str:
    """Format as ``(atom "a")`` / ``(set e1 e2 ...)`` in canonical order."""
    if isinstance(h, Atom):
        label = fmt(h.value).replace("\\", "\\\\").replace('"', '\\"')
        return f'(atom "{label}")'
    return "(set " + " ".join(hset_to_sexpr(c, fmt) for c in h.children) + ")"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            tokens.append(ch)
            i += 1
        elif ch == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j + 1])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise ValueError("unterminated string literal")
            tokens.append(('str', "".join(buf)))
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '()"':
                j += 1
            tokens.append(('sym', text[i:j]))
            i = j
    return tokens


def parse_sexpr(text: str,
                parse_atom: Callable[[str], object] = lambda s: s) -> HSet:
    """Parse the s-expression format back into an HSet.

    ``parse_atom`` decodes atom labels into carrier elements (default: keep
    the label string).  The result is re-canonicalized.
    """
    tokens = _tokenize(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ValueError(f"expected {tok!r} at token {pos}")
        pos += 1

    def parse_one() -> HSet:
        nonlocal pos
        expect("(")
        if pos >= len(tokens) or not isinstance(tokens[pos], tuple):
            raise ValueError("expected 'atom' or 'set' head")
        kind, word = tokens[pos]
        if kind != 'sym' or word not in ("atom", "set"):
            raise ValueError(f"expected 'atom' or 'set', got {word!r}")
        pos += 1
        if word == "atom":
            if pos >= len(tokens) or not isinstance(tokens[pos], tuple):
                raise ValueError("atom requires a label")
            lkind, label = tokens[pos]
            pos += 1
            if lkind not in ('str', 'sym'):
                raise ValueError("atom label must be a string or symbol")
            expect(")")
            return Atom(parse_atom(label))
        children = []
        while pos < len(tokens) and tokens[pos] == "(":
            children.append(parse_one())
        expect(")")
        if not children:
            raise ValueError("set requires at least one element")
        return node(children)

    out = parse_one()
    if pos != len(tokens):
        raise ValueError("trailing input after s-expression")
    return out


# --- enumeration and sampling ---------------------------------------------

def all_hsets(atom_values, max_depth: int) -> tuple:
    """Every HSet of depth <= max_depth over the given atom values.

    Counts grow doubly exponentially (2 atoms: 2, 5, 33, ... elements), so
    keep max_depth at 2 for exhaustive sweeps.
    """
    layer = tuple(Atom(v) for v in atom_values)
    if max_depth == 0:
        return layer
    prev = all_hsets(atom_values, max_depth - 1)
    out = list(layer)
    n = len(prev)
    for mask in range(1, 1 << n):
        out.append(node(prev[i] for i in range(n) if mask >> i & 1))
    return tuple(dict.fromkeys(out))


def random_hset(rng, atom_values, max_depth: int,
                branch: int = 3) -> HSet:
    """Sample a random HSet of depth <= max_depth (atoms get likelier as
    the depth budget shrinks); branch bounds the children drawn per node."""
    values = list(atom_values)
    if max_depth == 0 or rng.random() < 0.3:
        return Atom(rng.choice(values))
    kids = [random_hset(rng, values, max_depth - 1, branch)
            for _ in range(rng.randint(1, branch))]
    return node(kids)
