"""Line-oriented game (.gm) and morphism (.gmm) files.

One declaration per line, `#` comments, blank lines ignored. Printing is
canonical (sorted lines, canonical term encodings), so printing is
idempotent and parse/print round-trips.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, ValidationError
from .game import Game, build_game
from .terms import TermReader, encode, term_key


def _reader_words(line: str):
    """Split a line into the leading keyword and a TermReader for the rest."""
    stripped = line.strip()
    head, _, rest = stripped.partition(" ")
    return head, TermReader(rest.strip())


def _read_rational(r: TermReader, lineno: int) -> Fraction:
    r.skip_ws()
    start = r.pos
    while r.pos < len(r.text) and r.text[r.pos] in "+-/0123456789":
        r.pos += 1
    token = r.text[start:r.pos]
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {token!r}", line=lineno)


def _expect_end(r: TermReader, lineno: int):
    if not r.at_end():
        raise ParseError("trailing input", line=lineno)


def _expect(r: TermReader, ch: str, lineno: int):
    r.skip_ws()
    if r.peek() != ch:
        raise ParseError(f"expected {ch!r}", line=lineno)
    r.pos += 1


def parse_game_text(text: str):
    """Returns (name, Game). Raises ParseError or a validation error."""
    name = None
    nodes: set = set()
    edges: dict = {}
    edge_lines: dict = {}  # (src, tgt) -> declaration line, for error reports
    cells: dict = {}       # infoset id (Term) -> frozenset of nodes
    cell_player: dict = {}  # infoset id -> player
    utilities: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, r = _reader_words(line)
        try:
            if head == "game":
                name = r.text.strip()
                if not name:
                    raise ParseError("missing game name", line=lineno)
            elif head == "node":
                nodes.add(r.read_term())
                _expect_end(r, lineno)
            elif head == "edge":
                src = r.read_term()
                tgt = r.read_term()
                act = r.read_term()
                _expect_end(r, lineno)
                if (src, tgt) in edges:
                    raise ParseError("duplicate edge", line=lineno)
                edges[(src, tgt)] = act
                edge_lines[(src, tgt)] = lineno
            elif head == "infoset":
                ident = r.read_term()
                _expect(r, "{", lineno)
                members = []
                while True:
                    r.skip_ws()
                    if r.peek() == "}":
                        r.pos += 1
                        break
                    members.append(r.read_term())
                _expect_end(r, lineno)
                if ident in cells:
                    raise ParseError("duplicate infoset id", line=lineno)
                cells[ident] = frozenset(members)
            elif head == "player":
                pid = r.read_term()
                r.skip_ws()
                kw = r.text[r.pos:r.pos + 7]
                if kw != "infoset":
                    raise ParseError("expected 'infoset'", line=lineno)
                r.pos += 7
                ident = r.read_term()
                _expect_end(r, lineno)
                if ident in cell_player:
                    raise ParseError("infoset assigned to two players", line=lineno)
                cell_player[ident] = pid
            elif head == "utility":
                pid = r.read_term()
                r.skip_ws()
                if r.text.startswith("end", r.pos):
                    r.pos += 3
                    end = r.read_term()
                    value = _read_rational(r, lineno)
                    _expect_end(r, lineno)
                    utilities[(pid, end)] = value
                elif r.text.startswith("run", r.pos):
                    r.pos += 3
                    _expect(r, "{", lineno)
                    members = []
                    while True:
                        r.skip_ws()
                        if r.peek() == "}":
                            r.pos += 1
                            break
                        members.append(r.read_term())
                    value = _read_rational(r, lineno)
                    _expect_end(r, lineno)
                    utilities[(pid, frozenset(members))] = value
                else:
                    raise ParseError("expected 'end' or 'run'", line=lineno)
            else:
                raise ParseError(f"unknown declaration {head!r}", line=lineno)
        except ParseError as e:
            if e.line is None:
                raise ParseError(e.detail, line=lineno) from None
            raise
    if name is None:
        raise ParseError("missing 'game' declaration", line=1)
    unassigned = [i for i in cells if i not in cell_player]
    if unassigned:
        raise ValidationError("MoverMissing",
                              witness=sorted(unassigned, key=term_key)[0],
                              detail="infoset has no player line")
    stray = [i for i in cell_player if i not in cells]
    if stray:
        raise ParseError(f"player line for unknown infoset "
                         f"{encode(sorted(stray, key=term_key)[0])}")
    mover = {}
    for ident, cell in cells.items():
        for x in cell:
            mover[x] = cell_player[ident]
    try:
        game = build_game(nodes, edges, cells.values(), mover, utilities)
    except ValidationError as e:
        if e.code == "NonDeterministic" and isinstance(e.witness, tuple):
            x, a = e.witness
            where = sorted(line for (s, t), line in edge_lines.items()
                           if s == x and edges[(s, t)] == a)
            if where:
                raise ValidationError(e.code, e.witness,
                                      detail=f"line {where[-1]}") from None
        raise
    return name, game


def print_game(name: str, g: Game) -> str:
    lines = [f"game {name}"]
    for x in sorted(g.tree.nodes, key=term_key):
        lines.append(f"node {encode(x)}")
    for (x, y) in sorted(g.tree.edges, key=lambda e: (term_key(e[0]), term_key(e[1]))):
        lines.append(f"edge {encode(x)} {encode(y)} {encode(g.clt.label[(x, y)])}")
    cells = g.clt.sorted_infosets()
    ids = {cell: f"i{k}" for k, cell in enumerate(cells)}
    for cell in cells:
        members = " ".join(encode(x) for x in sorted(cell, key=term_key))
        lines.append(f"infoset {ids[cell]} {{ {members} }}")
    for cell in cells:
        pid = g.mover[next(iter(cell))]
        lines.append(f"player {encode(pid)} infoset {ids[cell]}")
    for (i, end) in sorted(g.utilities, key=lambda k: (term_key(k[0]), term_key(k[1]))):
        lines.append(f"utility {encode(i)} end {encode(end)} {g.utilities[(i, end)]}")
    return "\n".join(lines) + "\n"


def parse_morphism_text(text: str):
    """Returns (name, source_path, target_path, node_map dict)."""
    name = None
    source = None
    target = None
    node_map: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, r = _reader_words(line)
        if head == "morphism":
            name = r.text.strip()
        elif head == "source":
            source = r.text.strip()
        elif head == "target":
            target = r.text.strip()
        elif head == "map":
            src = r.read_term()
            r.skip_ws()
            if not r.text.startswith("->", r.pos):
                raise ParseError("expected '->'", line=lineno)
            r.pos += 2
            tgt = r.read_term()
            _expect_end(r, lineno)
            if src in node_map:
                raise ParseError("duplicate map key", line=lineno)
            node_map[src] = tgt
        else:
            raise ParseError(f"unknown declaration {head!r}", line=lineno)
    if name is None:
        raise ParseError("missing 'morphism' declaration", line=1)
    if source is None or target is None:
        raise ParseError("missing 'source' or 'target' declaration", line=1)
    return name, source, target, node_map


def print_morphism(name: str, source: str, target: str, node_map: dict) -> str:
    lines = [f"morphism {name}", f"source {source}", f"target {target}"]
    for x in sorted(node_map, key=term_key):
        lines.append(f"map {encode(x)} -> {encode(node_map[x])}")
    return "\n".join(lines) + "\n"
