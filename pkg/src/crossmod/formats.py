"""Text formats for groups, homomorphisms, crossed modules, cat¹-groups and extensions.

A file is a list of ``[section]`` blocks; ``#`` starts a comment. A group
block is either ``abelian n1 n2 ...`` (``abelian 1`` is trivial) or ``perm <degree>`` followed by one
generator per line (1-based images). Generators are numbered from 0 in
file order. A hom block is ``hom`` followed by ``gen <i> -> <target>``
lines, where the target is an element index or a word in the target's
generators (``a`` = generator 0, upper case for inverses).

Recognized layouts:

* group:           ``[group]``
* crossed module:  ``[T] [G] [mu] [action]``; action rows ``g t -> t'`` name
                   generator indices of ``G`` and ``T``
* cat¹-group:      ``[G] [d0] [d1]``
* extension:       crossed module sections plus ``[M]`` (abelian group) and
                   ``[f]`` (hom ``T -> M``)
* matrix:          ``rows cols`` then the entries
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, ParseError
from .groups import (
    FiniteGroup,
    GroupHom,
    abelian_group,
    action_from_generators,
    group_from_permutations,
    make_hom,
)
from .words import evaluate, parse_word


@dataclass
class Section:
    name: str
    line: int
    rows: list          # (line number, text)


def split_sections(text: str) -> dict:
    sections = {}
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ParseError(f"malformed section header {line!r}", no)
            name = line[1:-1].strip()
            if not name or name in sections:
                raise ParseError(f"empty or repeated section [{name}]", no)
            current = Section(name, no, [])
            sections[name] = current
        else:
            if current is None:
                raise ParseError("content before the first section header", no)
            current.rows.append((no, line))
    if not sections:
        raise ParseError("no sections found", 1)
    return sections


def _ints(tokens, no):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def parse_group(sec: Section) -> FiniteGroup:
    if not sec.rows:
        raise ParseError(f"[{sec.name}] is empty", sec.line)
    no, head = sec.rows[0]
    parts = head.split()
    try:
        if parts[0] == "abelian":
            G = abelian_group([n for n in _ints(parts[1:], no) if n != 1])
            G.file_generators = tuple(G.generators)
            return G
        if parts[0] == "perm":
            if len(parts) != 2:
                raise ParseError("expected 'perm <degree>'", no)
            degree = _ints(parts[1:], no)[0]
            gens = [_ints(text.split(), n) for n, text in sec.rows[1:]]
            G = group_from_permutations(degree, gens)
            idx = {p: i for i, p in enumerate(G.permutations)}
            G.file_generators = tuple(idx[tuple(v - 1 for v in g)] for g in gens)
            return G
    except ArgumentError as exc:
        raise ParseError(str(exc), no) from None
    raise ParseError(f"unknown group header {parts[0]!r}", no)


def _element(token: str, G: FiniteGroup, no: int) -> int:
    try:
        v = int(token)
    except ValueError:
        try:
            w = parse_word(token)
        except ArgumentError as exc:
            raise ParseError(str(exc), no) from None
        gens = getattr(G, "file_generators", G.generators)
        if any(abs(a) > len(gens) for a in w):
            raise ParseError(f"word {token!r} uses an unknown generator", no)
        return evaluate(w, G, gens)
    if not 0 <= v < G.order:
        raise ParseError(f"element index {v} out of range", no)
    return v


def _arrow_rows(sec: Section, skip_header: str = None):
    rows = sec.rows
    if skip_header and rows and rows[0][1] == skip_header:
        rows = rows[1:]
    for no, text in rows:
        if "->" not in text:
            raise ParseError("expected '... -> ...'", no)
        lhs, rhs = (s.strip() for s in text.split("->", 1))
        yield no, lhs.split(), rhs


def _gen(G, token, no):
    gens = getattr(G, "file_generators", G.generators)
    i = _ints([token], no)[0]
    if not 0 <= i < len(gens):
        raise ParseError(f"generator index {i} out of range", no)
    return gens[i]


def parse_hom(sec: Section, source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    """Raises :class:`ParseError` on syntax, :class:`CrossmodError` if not a homomorphism."""
    images = {}
    for no, lhs, rhs in _arrow_rows(sec, "hom"):
        if len(lhs) != 2 or lhs[0] != "gen":
            raise ParseError("expected 'gen <index> -> <target>'", no)
        images[_gen(source, lhs[1], no)] = _element(rhs, target, no)
    gens = getattr(source, "file_generators", source.generators)
    missing = [i for i, g in enumerate(gens) if g not in images]
    if missing:
        raise ParseError(f"no image for generator {missing[0]}", sec.line)
    return make_hom(source, target, images)


def parse_action(sec: Section, G: FiniteGroup, T: FiniteGroup):
    gT = getattr(T, "file_generators", T.generators)
    gG = getattr(G, "file_generators", G.generators)
    per_gen = {g: {} for g in gG}
    for no, lhs, rhs in _arrow_rows(sec):
        if len(lhs) != 2:
            raise ParseError("expected 'g t -> t'", no)
        g, t = _gen(G, lhs[0], no), _gen(T, lhs[1], no)
        per_gen[g][t] = _element(rhs, T, no)
    auts = {}
    for g, images in per_gen.items():
        for t in gT:
            images.setdefault(t, t)          # unlisted generators are fixed
        auts[g] = make_hom(T, T, images).images
    return action_from_generators(G, T, auts)


def _require(sections, names, kind):
    for n in names:
        if n not in sections:
            raise ParseError(f"{kind} file needs a [{n}] section", 1)


def detect_kind(sections: dict) -> str:
    keys = set(sections)
    if {"T", "G", "mu", "action", "M", "f"} <= keys:
        return "extension"
    if {"T", "G", "mu", "action"} <= keys:
        return "xmod"
    if {"G", "d0", "d1"} <= keys:
        return "cat1"
    if keys == {"group"}:
        return "group"
    if keys == {"matrix"}:
        return "matrix"
    raise ParseError(f"cannot tell the file type from sections {sorted(keys)}", 1)


@dataclass
class ParsedXMod:
    T: FiniteGroup
    G: FiniteGroup
    mu_section: Section
    action_section: Section


def load(text: str):
    """Parse ``text`` into ``(kind, data)`` without validating axioms.

    ``data`` holds the parsed groups and raw sections; the validators in
    :mod:`crossmod.cli` build the objects so that axiom failures surface
    as :class:`CrossmodError` rather than parse errors.
    """
    sections = split_sections(text)
    kind = detect_kind(sections)
    if kind == "group":
        return kind, {"group": parse_group(sections["group"])}
    if kind == "matrix":
        from .lattice import parse_matrix

        body = "\n".join(t for _, t in sections["matrix"].rows)
        try:
            return kind, {"matrix": parse_matrix(body)}
        except ArgumentError as exc:
            raise ParseError(str(exc), sections["matrix"].line) from None
    if kind == "cat1":
        return kind, {"G": parse_group(sections["G"]), "sections": sections}
    data = {"T": parse_group(sections["T"]), "G": parse_group(sections["G"]), "sections": sections}
    if kind == "extension":
        data["M"] = parse_group(sections["M"])
    return kind, data


def build_xmod(data):
    from .xmod import make_crossed_module

    s = data["sections"]
    T, G = data["T"], data["G"]
    mu = parse_hom(s["mu"], T, G)
    action = parse_action(s["action"], G, T)
    return make_crossed_module(T, G, mu, action)


def build_cat1(data):
    from .cat1 import make_cat1

    s, G = data["sections"], data["G"]
    return make_cat1(G, parse_hom(s["d0"], G, G), parse_hom(s["d1"], G, G))


def build_extension(data):
    from .derived import make_extension

    X = build_xmod(data)
    f = parse_hom(data["sections"]["f"], X.T, data["M"])
    return make_extension(X, f)


def format_table(rows, header=None) -> str:
    out = []
    if header:
        out.append(header)
    for r in rows:
        out.append(" ".join(str(int(v)) for v in np.atleast_1d(r)))
    return "\n".join(out)
