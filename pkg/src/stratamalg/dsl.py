"""The ``.strat`` text format.

Grammar::

    document := (space | morphism | tower)*
    space    := "space" NAME "{" (stratum | order | link)* "}"
    stratum  := "stratum" NAME "dim" (INT | "inf") ["compact"] ["connected"]
    order    := "order" NAME "<" NAME ("<" NAME)*
    link     := "link" NAME "=" NAME
    morphism := "morphism" NAME ":" NAME "->" NAME "{" entry* (decl | linkmap)* "}"
    entry    := NAME "->" NAME ["onto"]
    decl     := "declare" ("proper" | "injective" | "immersion")
    linkmap  := "linkmap" NAME "=" NAME
    tower    := "tower" NAME "{" ("stage" NAME)+ ("map" NAME ["regular"])+ "}"

``#`` starts a comment.  Flags are false unless written.  The words
``space stratum order link morphism declare linkmap onto tower stage map
regular`` are reserved.  ``link S = L`` makes the space ``L`` the link of
stratum ``S``; ``linkmap S = m`` gives the morphism ``m`` between the links
of ``S`` and of its image.  Names of spaces, morphisms and towers live in
separate namespaces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .limits import Tower
from .morphisms import Declarations, StrataMorphism
from .pseudomanifold import PseudoMorphism, PseudoSkeleton
from .skeleton import INF, Skeleton, StratumLabel, validate_skeleton

# words that start a statement or end an optional clause; never usable as names
KEYWORDS = frozenset(
    "space stratum order link morphism declare linkmap onto tower stage map regular".split()
)


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class DSLError(ValueError):
    def __init__(self, message: str, pos: Optional[Pos] = None, token: Optional[str] = None):
        self.message = message
        self.pos = pos
        self.token = token
        where = f"{pos}: " if pos else ""
        at = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}{message}{at}")


class DSLSyntaxError(DSLError):
    pass


class UnresolvedReference(DSLError):
    pass


class DuplicateName(DSLError):
    pass


class LinkCycle(DSLError):
    pass


# -- tokens --------------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<sym>[{}:<=])|(?P<int>[0-9]+)(?![A-Za-z_])"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class Token:
    kind: str  # name | int | sym | eof
    text: str
    pos: Pos


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise DSLSyntaxError("unexpected character", Pos(line, i - start + 1), text[i])
        kind = m.lastgroup
        pos = Pos(line, i - start + 1)
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "arrow":
            out.append(Token("sym", "->", pos))
        elif kind in ("sym", "int", "name"):
            out.append(Token(kind, m.group(), pos))
        i = m.end()
    out.append(Token("eof", "", Pos(line, i - start + 1)))
    return out


# -- syntax tree ---------------------------------------------------------------


@dataclass(frozen=True)
class StratumDecl:
    name: str
    dim: float
    compact: bool = False
    connected: bool = False
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class OrderDecl:
    chain: tuple
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class LinkDecl:
    stratum: str
    space: str
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class SpaceDecl:
    name: str
    strata: tuple = ()
    orders: tuple = ()
    links: tuple = ()
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class EntryDecl:
    source: str
    target: str
    onto: bool = False
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    entries: tuple = ()
    declares: frozenset = frozenset()
    linkmaps: tuple = ()  # LinkDecl with .space naming a morphism
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass(frozen=True)
class TowerDecl:
    name: str
    stages: tuple
    maps: tuple
    regular: tuple
    pos: Optional[Pos] = field(default=None, compare=False)


@dataclass
class Document:
    spaces: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    towers: dict = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Document):
            return NotImplemented
        return (
            list(self.spaces.items()) == list(other.spaces.items())
            and list(self.morphisms.items()) == list(other.morphisms.items())
            and list(self.towers.items()) == list(other.towers.items())
        )

    # -- building library objects --------------------------------------------

    def skeleton(self, name: str) -> Skeleton:
        d = self._space(name)
        strata = {s.name: StratumLabel(s.dim, s.compact, s.connected) for s in d.strata}
        order = []
        for o in d.orders:
            order += list(zip(o.chain, o.chain[1:]))
        return Skeleton(strata, order)

    def pseudo(self, name: str) -> PseudoSkeleton:
        d = self._space(name)
        return PseudoSkeleton(self.skeleton(name), {l.stratum: self.pseudo(l.space) for l in d.links})

    def morphism(self, name: str) -> StrataMorphism:
        d = self._morphism(name)
        decl = Declarations(
            "proper" in d.declares, "injective" in d.declares, "immersion" in d.declares
        )
        return StrataMorphism(
            self.skeleton(d.source),
            self.skeleton(d.target),
            {e.source: (e.target, e.onto) for e in d.entries},
            decl,
        )

    def pseudo_morphism(self, name: str) -> PseudoMorphism:
        d = self._morphism(name)
        return PseudoMorphism(
            self.pseudo(d.source),
            self.pseudo(d.target),
            self.morphism(name),
            {l.stratum: self.pseudo_morphism(l.space) for l in d.linkmaps},
        )

    def tower(self, name: str) -> Tower:
        d = self.towers.get(name)
        if d is None:
            raise UnresolvedReference(f"no tower named {name!r}")
        return Tower(
            tuple(self.skeleton(s) for s in d.stages),
            tuple(self.morphism(m) for m in d.maps),
            d.regular,
        )

    def linkmap_targets(self) -> set:
        return {l.space for m in self.morphisms.values() for l in m.linkmaps}

    def link_targets(self) -> set:
        return {l.space for s in self.spaces.values() for l in s.links}

    def _space(self, name: str) -> SpaceDecl:
        if name not in self.spaces:
            raise UnresolvedReference(f"no space named {name!r}")
        return self.spaces[name]

    def _morphism(self, name: str) -> MorphismDecl:
        if name not in self.morphisms:
            raise UnresolvedReference(f"no morphism named {name!r}")
        return self.morphisms[name]


# -- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def _fail(self, what: str):
        t = self.tok
        raise DSLSyntaxError(f"expected {what}", t.pos, t.text if t.kind != "eof" else "end of input")

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "name") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self._fail(repr(text))
        t = self.tok
        self.k += 1
        return t

    def name(self) -> Token:
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            self._fail("a name")
        self.k += 1
        return t

    def document(self) -> Document:
        doc = Document()
        while self.tok.kind != "eof":
            if self.at("space"):
                d = self.space()
                table = doc.spaces
            elif self.at("morphism"):
                d = self.morphism()
                table = doc.morphisms
            elif self.at("tower"):
                d = self.tower()
                table = doc.towers
            else:
                self._fail("'space', 'morphism' or 'tower'")
            if d.name in table:
                raise DuplicateName("duplicate name", d.pos, d.name)
            table[d.name] = d
        return doc

    def space(self) -> SpaceDecl:
        self.expect("space")
        nt = self.name()
        self.expect("{")
        strata, orders, links = [], [], []
        while not self.at("}"):
            if self.at("stratum"):
                p = self.expect("stratum").pos
                sn = self.name()
                self.expect("dim")
                if self.tok.kind == "int":
                    dim = int(self.tok.text)
                    self.k += 1
                elif self.at("inf"):
                    dim = INF
                    self.k += 1
                else:
                    self._fail("a dimension")
                compact = connected = False
                if self.at("compact"):
                    compact = True
                    self.k += 1
                if self.at("connected"):
                    connected = True
                    self.k += 1
                strata.append(StratumDecl(sn.text, dim, compact, connected, sn.pos))
            elif self.at("order"):
                p = self.expect("order").pos
                chain = [self.name().text]
                self.expect("<")
                chain.append(self.name().text)
                while self.at("<"):
                    self.k += 1
                    chain.append(self.name().text)
                orders.append(OrderDecl(tuple(chain), p))
            elif self.at("link"):
                p = self.expect("link").pos
                s = self.name().text
                self.expect("=")
                links.append(LinkDecl(s, self.name().text, p))
            else:
                self._fail("'stratum', 'order', 'link' or '}'")
        self.expect("}")
        return SpaceDecl(nt.text, tuple(strata), tuple(orders), tuple(links), nt.pos)

    def morphism(self) -> MorphismDecl:
        self.expect("morphism")
        nt = self.name()
        self.expect(":")
        src = self.name().text
        self.expect("->")
        tgt = self.name().text
        self.expect("{")
        entries, declares, linkmaps = [], [], []
        while self.tok.kind == "name" and self.tok.text not in KEYWORDS:
            a = self.name()
            self.expect("->")
            b = self.name().text
            onto = False
            if self.at("onto"):
                onto = True
                self.k += 1
            entries.append(EntryDecl(a.text, b, onto, a.pos))
        while not self.at("}"):
            if self.at("declare"):
                self.k += 1
                t = self.tok
                if t.text not in ("proper", "injective", "immersion"):
                    self._fail("'proper', 'injective' or 'immersion'")
                self.k += 1
                declares.append(t.text)
            elif self.at("linkmap"):
                p = self.expect("linkmap").pos
                s = self.name().text
                self.expect("=")
                linkmaps.append(LinkDecl(s, self.name().text, p))
            else:
                self._fail("'declare', 'linkmap' or '}'")
        self.expect("}")
        return MorphismDecl(
            nt.text, src, tgt, tuple(entries), frozenset(declares), tuple(linkmaps), nt.pos
        )

    def tower(self) -> TowerDecl:
        self.expect("tower")
        nt = self.name()
        self.expect("{")
        stages, maps, regular = [], [], []
        self.expect("stage")
        stages.append(self.name().text)
        while self.at("stage"):
            self.k += 1
            stages.append(self.name().text)
        self.expect("map")
        while True:
            maps.append(self.name().text)
            reg = self.at("regular")
            if reg:
                self.k += 1
            regular.append(reg)
            if not self.at("map"):
                break
            self.k += 1
        self.expect("}")
        return TowerDecl(nt.text, tuple(stages), tuple(maps), tuple(regular), nt.pos)


def _resolve(doc: Document) -> None:
    for sp in doc.spaces.values():
        names = set()
        for s in sp.strata:
            if s.name in names:
                raise DuplicateName(f"stratum declared twice in space {sp.name!r}", s.pos, s.name)
            names.add(s.name)
        for o in sp.orders:
            for x in o.chain:
                if x not in names:
                    raise UnresolvedReference(f"unknown stratum in space {sp.name!r}", o.pos, x)
        seen = set()
        for l in sp.links:
            if l.stratum not in names:
                raise UnresolvedReference(f"unknown stratum in space {sp.name!r}", l.pos, l.stratum)
            if l.stratum in seen:
                raise DuplicateName("stratum has two links", l.pos, l.stratum)
            seen.add(l.stratum)
            if l.space not in doc.spaces:
                raise UnresolvedReference("unknown space", l.pos, l.space)
    for m in doc.morphisms.values():
        for ref in (m.source, m.target):
            if ref not in doc.spaces:
                raise UnresolvedReference(f"unknown space in morphism {m.name!r}", m.pos, ref)
        src = {s.name for s in doc.spaces[m.source].strata}
        tgt = {s.name for s in doc.spaces[m.target].strata}
        seen = set()
        for e in m.entries:
            if e.source not in src:
                raise UnresolvedReference(f"unknown stratum of {m.source!r}", e.pos, e.source)
            if e.target not in tgt:
                raise UnresolvedReference(f"unknown stratum of {m.target!r}", e.pos, e.target)
            if e.source in seen:
                raise DuplicateName("stratum mapped twice", e.pos, e.source)
            seen.add(e.source)
        lseen = set()
        for l in m.linkmaps:
            if l.stratum not in src:
                raise UnresolvedReference(f"unknown stratum of {m.source!r}", l.pos, l.stratum)
            if l.stratum in lseen:
                raise DuplicateName("stratum has two link maps", l.pos, l.stratum)
            lseen.add(l.stratum)
            if l.space not in doc.morphisms:
                raise UnresolvedReference("unknown morphism", l.pos, l.space)
    for t in doc.towers.values():
        for s in t.stages:
            if s not in doc.spaces:
                raise UnresolvedReference(f"unknown space in tower {t.name!r}", t.pos, s)
        for m in t.maps:
            if m not in doc.morphisms:
                raise UnresolvedReference(f"unknown morphism in tower {t.name!r}", t.pos, m)
    _check_cycles(doc)


def _check_cycles(doc: Document) -> None:
    for table, edges_of in (
        (doc.spaces, lambda d: [(l.space, l.pos) for l in d.links]),
        (doc.morphisms, lambda d: [(l.space, l.pos) for l in d.linkmaps]),
    ):
        state: dict[str, int] = {}

        def visit(n, path):
            state[n] = 1
            for nxt, pos in edges_of(table[n]):
                if state.get(nxt) == 1:
                    cyc = path[path.index(nxt):] + [nxt] if nxt in path else [n, nxt]
                    raise LinkCycle(f"link cycle {' -> '.join(cyc)}", pos, nxt)
                if nxt not in state:
                    visit(nxt, path + [nxt])
            state[n] = 2

        for n in table:
            if n not in state:
                visit(n, [n])


def parse(text: str) -> Document:
    doc = _Parser(text).document()
    _resolve(doc)
    return doc


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# -- validation with source positions -----------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    pos: Optional[Pos]
    message: str

    def __str__(self) -> str:
        return f"{self.pos}: {self.message}" if self.pos else self.message


def _order_pos(sp: SpaceDecl, a: str, b: str) -> Optional[Pos]:
    for o in sp.orders:
        if a in o.chain and b in o.chain:
            return o.pos
    for o in sp.orders:
        if a in o.chain or b in o.chain:
            return o.pos
    return sp.pos


def validate_space(doc: Document, name: str) -> list[Diagnostic]:
    sp = doc.spaces[name]
    out = []
    for o in sp.orders:
        for a, b in zip(o.chain, o.chain[1:]):
            if a == b:
                out.append(Diagnostic(o.pos, f"antisymmetry({a},{a}) in space {name}: {a} < {a}"))
    sk = doc.skeleton(name)
    for v in validate_skeleton(sk).violations:
        a, b = v[len("antisymmetry("):-1].split(",")
        out.append(Diagnostic(_order_pos(sp, a, b), f"{v} in space {name}"))
    return out


# -- printer -------------------------------------------------------------------


def _fmt_dim(d) -> str:
    return "inf" if d == INF else str(int(d))


def format_space_decl(d: SpaceDecl) -> str:
    lines = [f"space {d.name} {{"]
    for s in d.strata:
        flags = (" compact" if s.compact else "") + (" connected" if s.connected else "")
        lines.append(f"  stratum {s.name} dim {_fmt_dim(s.dim)}{flags}")
    for o in d.orders:
        lines.append("  order " + " < ".join(o.chain))
    for l in d.links:
        lines.append(f"  link {l.stratum} = {l.space}")
    lines.append("}")
    return "\n".join(lines)


def format_morphism_decl(d: MorphismDecl) -> str:
    lines = [f"morphism {d.name} : {d.source} -> {d.target} {{"]
    for e in d.entries:
        lines.append(f"  {e.source} -> {e.target}" + (" onto" if e.onto else ""))
    for k in ("proper", "injective", "immersion"):
        if k in d.declares:
            lines.append(f"  declare {k}")
    for l in d.linkmaps:
        lines.append(f"  linkmap {l.stratum} = {l.space}")
    lines.append("}")
    return "\n".join(lines)


def format_tower_decl(d: TowerDecl) -> str:
    lines = [f"tower {d.name} {{"]
    lines += [f"  stage {s}" for s in d.stages]
    lines += [f"  map {m}" + (" regular" if r else "") for m, r in zip(d.maps, d.regular)]
    lines.append("}")
    return "\n".join(lines)


def format_document(doc: Document) -> str:
    blocks = [format_space_decl(d) for d in doc.spaces.values()]
    blocks += [format_morphism_decl(d) for d in doc.morphisms.values()]
    blocks += [format_tower_decl(d) for d in doc.towers.values()]
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def space_decl(name: str, s: Skeleton, links: Optional[dict] = None) -> SpaceDecl:
    """Declaration for a skeleton: strata by id, order as cover pairs."""
    strata = tuple(
        StratumDecl(x, s.labels[x].dim, s.labels[x].compact, s.labels[x].connected) for x in s.ids
    )
    orders = tuple(OrderDecl((a, b)) for a, b in s.cover_pairs())
    lk = tuple(LinkDecl(k, v) for k, v in sorted((links or {}).items()))
    return SpaceDecl(name, strata, orders, lk)


def pseudo_document(name: str, x: PseudoSkeleton) -> Document:
    """Document declaring ``x`` as ``name`` and each link as ``name_link_S``."""
    doc = Document()

    def emit(nm: str, p: PseudoSkeleton):
        links = {}
        for s, l in p.links.items():
            sub = f"{nm}_link_{s}"
            emit(sub, l)
            links[s] = sub
        doc.spaces[nm] = space_decl(nm, p.base, links)

    emit(name, x)
    return doc


def format_skeleton(name: str, s: Skeleton) -> str:
    return format_space_decl(space_decl(name, s)) + "\n"


__all__ = [
    "DSLError",
    "DSLSyntaxError",
    "Diagnostic",
    "Document",
    "DuplicateName",
    "LinkCycle",
    "UnresolvedReference",
    "format_document",
    "format_skeleton",
    "parse",
    "parse_file",
    "pseudo_document",
    "space_decl",
    "tokenize",
    "validate_space",
]
