"""Command-line surface.

Exit codes: 0 for success / true verdicts, 1 for false verdicts (invalid
game, invalid morphism, no isomorphism, no subgame), 2 for usage or syntax
errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from .canon import (properties, to_action_set, to_distinguished,
                    to_distinguished_sequence, to_sequence)
from .equilibrium import nash, outcome, spe, strategies
from .errors import GameError, OperationError, ParseError, ValidationError
from .fileformat import (parse_game_text, parse_morphism_text, print_game,
                         print_morphism)
from .morphism import (clt_mono_witness, compose, is_iso, is_mono,
                       iso_search, mono_witness, validate_game_morphism)
from .subgame import selten_subgame, subgame_roots
from .terms import encode, encode_set, parse_term, term_key


class _Report:
    def __init__(self, fmt: str):
        self.machine = fmt == "machine"

    def line(self, key: str, *values):
        text = " ".join(str(v) for v in values)
        if self.machine:
            print(f"{key} {text}".rstrip())
        else:
            print(f"{key}: {text}" if text else key)


def _load_game(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_game_text(fh.read())


def _load_morphism(path: str):
    name, src_ref, tgt_ref, node_map = parse_morphism_text(
        open(path, encoding="utf-8").read())
    base = os.path.dirname(os.path.abspath(path))
    src_path = os.path.join(base, src_ref) if not os.path.isabs(src_ref) else src_ref
    tgt_path = os.path.join(base, tgt_ref) if not os.path.isabs(tgt_ref) else tgt_ref
    _, src = _load_game(src_path)
    _, tgt = _load_game(tgt_path)
    return name, src, tgt, node_map


def _strategy_str(s):
    return " ".join(f"{encode_set(cell)}={encode(a)}" for cell, a in s.choices)


def _cmd_validate(args, rep):
    name, g = _load_game(args.game)
    rep.line("game", name)
    rep.line("nodes", len(g.tree.nodes))
    rep.line("root", encode(g.tree.root))
    rep.line("actions", " ".join(encode(a) for a in sorted(g.clt.actions, key=term_key)))
    rep.line("players", " ".join(encode(i) for i in sorted(g.players, key=term_key)))
    for z in g.runs():
        rep.line("run", encode_set(z))
    return 0


def _cmd_props(args, rep):
    _, g = _load_game(args.game)
    p = properties(g)
    rep.line("distinguished_actions", str(p.distinguished_actions).lower())
    rep.line("uses_sequences", str(p.uses_sequences).lower())
    rep.line("uses_action_sets", str(p.uses_action_sets).lower())
    rep.line("no_absentmindedness", str(p.no_absentmindedness).lower())
    rep.line("perfect_information", str(p.perfect_information).lower())
    return 0


def _cmd_strategies(args, rep):
    _, g = _load_game(args.game)
    for s in strategies(g, args.max_strategies):
        rep.line("strategy", _strategy_str(s), "outcome", encode_set(outcome(g, s)))
    return 0


def _cmd_nash(args, rep):
    _, g = _load_game(args.game)
    for s in nash(g, args.max_strategies):
        rep.line("nash", _strategy_str(s))
    return 0


def _cmd_spe(args, rep):
    _, g = _load_game(args.game)
    for s in spe(g, args.max_strategies):
        rep.line("spe", _strategy_str(s))
    return 0


def _cmd_subgames(args, rep):
    _, g = _load_game(args.game)
    for r in sorted(subgame_roots(g), key=term_key):
        rep.line("subgame_root", encode(r))
    return 0


def _cmd_subgame(args, rep):
    name, g = _load_game(args.game)
    at = parse_term(args.at)
    res = selten_subgame(g, at)
    rep.line("root", encode(res.root))
    rep.line("nodes", len(res.subgame.tree.nodes))
    sys.stdout.write(print_game(f"{name}.at.{encode(at)}", res.subgame))
    return 0


_CONVERTERS = {
    "distinguished": to_distinguished,
    "sequence": to_sequence,
    "action-set": to_action_set,
    "distinguished-sequence": to_distinguished_sequence,
}


def _cmd_convert(args, rep):
    name, g = _load_game(args.game)
    result = _CONVERTERS[args.to](g)
    stem, _ = os.path.splitext(args.game)
    out_game = f"{stem}.{args.to}.gm"
    out_morph = f"{stem}.{args.to}.gmm"
    new_name = f"{name}.{args.to}"
    with open(out_game, "w", encoding="utf-8") as fh:
        fh.write(print_game(new_name, result.game))
    with open(out_morph, "w", encoding="utf-8") as fh:
        fh.write(print_morphism(
            f"{name}.to.{args.to}",
            os.path.basename(args.game), os.path.basename(out_game),
            result.certificate.node_map))
    rep.line("game_file", out_game)
    rep.line("morphism_file", out_morph)
    return 0


def _report_morphism_error(e: GameError, rep, src=None, tgt=None, node_map=None):
    rep.line("verdict", "invalid")
    rep.line("error", str(e))
    if e.code == "ActionTransformNotConstant" and src is not None:
        x1, x2 = e.witness
        for x in (x1, x2):
            for a in sorted(src.clt.feasible[x], key=term_key):
                y = src.clt.next[(x, a)]
                image = tgt.clt.label[(node_map[x], node_map[y])]
                rep.line("alpha", encode(x), encode(a), "->", encode(image))


def _check_morphism(path, rep, classify=False):
    _, src, tgt, node_map = _load_morphism(path)
    try:
        gm = validate_game_morphism(src, tgt, node_map)
    except (ValidationError, OperationError) as e:
        _report_morphism_error(e, rep, src, tgt, node_map)
        return 1
    rep.line("verdict", "valid")
    for cell in sorted(gm.clt_morphism.alpha, key=encode_set):
        for a in sorted(gm.clt_morphism.alpha[cell], key=term_key):
            rep.line("alpha", encode_set(cell), encode(a), "->",
                     encode(gm.clt_morphism.alpha[cell][a]))
    for z in gm.source.runs():
        rep.line("zeta", encode_set(z), "->", encode_set(gm.zeta[z]))
    for i in sorted(gm.iota, key=term_key):
        rep.line("iota", encode(i), "->", encode(gm.iota[i]))
    if classify:
        mono = is_mono(gm)
        iso = is_iso(gm)
        rep.line("mono", str(mono).lower())
        rep.line("iso", str(iso).lower())
        w = mono_witness(gm)
        if w is not None:
            g1, g2 = w
            for x in sorted(g1.node_map, key=term_key):
                rep.line("mono_witness", encode(x), "->",
                         encode(g1.node_map[x]), "|", encode(g2.node_map[x]))
        cw = clt_mono_witness(gm.clt_morphism)
        if cw is not None:
            t1, t2 = cw
            for x in sorted(t1.node_map, key=term_key):
                rep.line("clt_mono_witness", encode(x), "->",
                         encode(t1.node_map[x]), "|", encode(t2.node_map[x]))
    return 0


def _cmd_morphism(args, rep):
    if args.action == "check":
        return _check_morphism(args.files[0], rep)
    if args.action == "classify":
        return _check_morphism(args.files[0], rep, classify=True)
    if args.action == "compose":
        if len(args.files) != 2:
            raise ParseError("compose needs two morphism files")
        _, s1, t1, map1 = _load_morphism(args.files[0])
        _, s2, t2, map2 = _load_morphism(args.files[1])
        m1 = validate_game_morphism(s1, t1, map1)
        m2 = validate_game_morphism(s2, t2, map2)
        m = compose(m2, m1)
        for x in sorted(m.node_map, key=term_key):
            rep.line("map", encode(x), "->", encode(m.node_map[x]))
        return 0
    raise ParseError(f"unknown morphism action {args.action!r}")


def _cmd_iso(args, rep):
    name1, g1 = _load_game(args.game1)
    name2, g2 = _load_game(args.game2)
    m = iso_search(g1, g2)
    if m is None:
        rep.line("verdict", "not-isomorphic")
        return 1
    rep.line("verdict", "isomorphic")
    for x in sorted(m.node_map, key=term_key):
        rep.line("map", encode(x), "->", encode(m.node_map[x]))
    if args.emit_morphism:
        with open(args.emit_morphism, "w", encoding="utf-8") as fh:
            fh.write(print_morphism(f"{name1}.iso.{name2}",
                                    os.path.abspath(args.game1),
                                    os.path.abspath(args.game2), m.node_map))
        rep.line("morphism_file", args.emit_morphism)
    return 0


def _build_parser():
    p = argparse.ArgumentParser(prog="gamecat")
    p.add_argument("--format", choices=["human", "machine"], default="human")
    p.add_argument("--max-strategies", type=int, default=1_000_000)
    sub = p.add_subparsers(dest="command", required=True)

    for cmd, fn in [("validate", _cmd_validate), ("props", _cmd_props),
                    ("strategies", _cmd_strategies), ("nash", _cmd_nash),
                    ("spe", _cmd_spe), ("subgames", _cmd_subgames)]:
        sp = sub.add_parser(cmd)
        sp.add_argument("game")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("subgame")
    sp.add_argument("game")
    sp.add_argument("--at", required=True)
    sp.set_defaults(func=_cmd_subgame)

    sp = sub.add_parser("convert")
    sp.add_argument("game")
    sp.add_argument("--to", required=True, choices=sorted(_CONVERTERS))
    sp.set_defaults(func=_cmd_convert)

    sp = sub.add_parser("morphism")
    sp.add_argument("action", choices=["check", "classify", "compose"])
    sp.add_argument("files", nargs="+")
    sp.set_defaults(func=_cmd_morphism)

    sp = sub.add_parser("iso")
    sp.add_argument("game1")
    sp.add_argument("game2")
    sp.add_argument("--emit-morphism")
    sp.set_defaults(func=_cmd_iso)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    rep = _Report(args.format)
    try:
        return args.func(args, rep)
    except ParseError as e:
        rep.line("error", str(e))
        return 2
    except (ValidationError, OperationError) as e:
        rep.line("verdict", "invalid")
        rep.line("error", str(e))
        return 1
    except OSError as e:
        rep.line("error", str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
