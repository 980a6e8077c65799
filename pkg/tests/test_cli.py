import shutil

from gamecat import is_iso, parse_game_text, validate_game_morphism
from gamecat.cli import main
from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate_lists_derived_data(capsys):
    code, out = run(capsys, "validate", fixture_path("trio_a.gm"))
    assert code == 0
    assert "nodes: 9" in out
    assert "players: P1 P2 P3" in out
    assert out.count("run:") == 5
    assert "run: {0,3,5}" in out


def test_validate_rejects_broken_file(tmp_path, capsys):
    bad = tmp_path / "bad.gm"
    bad.write_text("game b\nnode 0\n")
    code, out = run(capsys, "validate", str(bad))
    assert code == 1
    assert "Trivial" in out


def test_syntax_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.gm"
    bad.write_text("game b\nnode (0\n")
    code, out = run(capsys, "validate", str(bad))
    assert code == 2
    assert "SyntaxError" in out


def test_missing_file_exits_2(capsys):
    code, _ = run(capsys, "validate", fixture_path("nope.gm"))
    assert code == 2


def test_props_output(capsys):
    code, out = run(capsys, "props", fixture_path("trio_a.gm"))
    assert code == 0
    assert "distinguished_actions: true" in out
    assert "perfect_information: false" in out


def test_machine_format(capsys):
    code, out = run(capsys, "--format", "machine", "props",
                    fixture_path("trio_a.gm"))
    assert code == 0
    assert "distinguished_actions true" in out


def test_strategies_and_equilibria(capsys):
    code, out = run(capsys, "strategies", fixture_path("trio_a.gm"))
    assert code == 0
    assert out.count("strategy:") == 8
    code, out = run(capsys, "nash", fixture_path("trio_a.gm"))
    assert code == 0
    assert out.count("nash:") >= 1
    code, out = run(capsys, "spe", fixture_path("trio_a.gm"))
    assert code == 0
    assert out.count("spe:") >= 1


def test_strategy_cap_flag(capsys):
    code, out = run(capsys, "--max-strategies", "7", "strategies",
                    fixture_path("trio_a.gm"))
    assert code == 1
    assert "StrategySpaceTooLarge" in out


def test_morphism_check_valid_shows_transformations(capsys):
    code, out = run(capsys, "morphism", "check", fixture_path("prefixed.gmm"))
    assert code == 0
    assert "verdict: valid" in out
    assert "zeta: {0,2} -> {10,12,50}" in out
    assert "zeta: {0,1} -> {10,11,50}" in out


def test_morphism_check_infoset_split(capsys):
    code, out = run(capsys, "morphism", "check", fixture_path("split.gmm"))
    assert code == 1
    assert "InfosetSplit {1,3}" in out


def test_morphism_check_action_transform_values(capsys):
    code, out = run(capsys, "morphism", "check", fixture_path("mixedalpha.gmm"))
    assert code == 1
    assert "ActionTransformNotConstant" in out
    assert "alpha: 3 b -> e" in out
    assert "alpha: 4 b -> f" in out


def test_morphism_check_no_player_transform(capsys):
    code, out = run(capsys, "morphism", "check", fixture_path("twomover.gmm"))
    assert code == 1
    assert "NoPlayerTransform" in out


def test_morphism_classify(capsys):
    code, out = run(capsys, "morphism", "classify", fixture_path("collapse.gmm"))
    assert code == 0
    assert "mono: true" in out
    assert "iso: false" in out
    assert "clt_mono_witness" in out
    assert "-> 41" in out and "| 42" in out


def test_morphism_compose(tmp_path, capsys):
    # compose the prefixed morphism with the identity on its target
    shutil.copy(fixture_path("prefixed_src.gm"), tmp_path / "prefixed_src.gm")
    shutil.copy(fixture_path("prefixed_tgt.gm"), tmp_path / "prefixed_tgt.gm")
    shutil.copy(fixture_path("prefixed.gmm"), tmp_path / "prefixed.gmm")
    _, tgt = parse_game_text(open(fixture_path("prefixed_tgt.gm")).read())
    from gamecat import print_morphism
    ident = print_morphism("id", "prefixed_tgt.gm", "prefixed_tgt.gm",
                           {x: x for x in tgt.tree.nodes})
    (tmp_path / "id.gmm").write_text(ident)
    code, out = run(capsys, "morphism", "compose",
                    str(tmp_path / "prefixed.gmm"), str(tmp_path / "id.gmm"))
    assert code == 0
    assert "map: 0 -> 10" in out
    assert "map: 2 -> 12" in out


def test_subgames_and_subgame(capsys):
    code, out = run(capsys, "subgames", fixture_path("nested.gm"))
    assert code == 0
    assert "subgame_root: 0" in out and "subgame_root: 24" in out
    code, out = run(capsys, "subgame", fixture_path("nested.gm"), "--at", "24")
    assert code == 0
    assert "nodes: 3" in out
    code, out = run(capsys, "subgame", fixture_path("nested.gm"), "--at", "11")
    assert code == 1
    assert "NotExists {11,12}" in out


def test_iso_command(capsys):
    code, out = run(capsys, "iso", fixture_path("trio_a.gm"),
                    fixture_path("trio_b.gm"))
    assert code == 0
    assert "verdict: isomorphic" in out
    code, out = run(capsys, "iso", fixture_path("trio_a.gm"),
                    fixture_path("nested.gm"))
    assert code == 1
    assert "verdict: not-isomorphic" in out


def test_iso_emit_morphism(tmp_path, capsys):
    out_path = tmp_path / "witness.gmm"
    code, out = run(capsys, "iso", fixture_path("trio_a.gm"),
                    fixture_path("trio_b.gm"), "--emit-morphism",
                    str(out_path))
    assert code == 0
    code, out = run(capsys, "morphism", "classify", str(out_path))
    assert code == 0
    assert "iso: true" in out


def test_convert_writes_verifiable_pair(tmp_path, capsys):
    for to in ["distinguished", "sequence", "action-set",
               "distinguished-sequence"]:
        work = tmp_path / to.replace("-", "_")
        work.mkdir()
        game_path = work / "trio_a.gm"
        shutil.copy(fixture_path("trio_a.gm"), game_path)
        code, out = run(capsys, "convert", str(game_path), "--to", to)
        assert code == 0
        out_game = work / f"trio_a.{to}.gm"
        out_morph = work / f"trio_a.{to}.gmm"
        assert out_game.exists() and out_morph.exists()
        # re-check the emitted certificate through the public API
        from gamecat import parse_morphism_text
        _, src_ref, tgt_ref, node_map = parse_morphism_text(
            out_morph.read_text())
        _, src = parse_game_text((work / src_ref).read_text())
        _, tgt = parse_game_text((work / tgt_ref).read_text())
        m = validate_game_morphism(src, tgt, node_map)
        assert is_iso(m)
        code, _ = run(capsys, "morphism", "check", str(out_morph))
        assert code == 0


def test_convert_absentminded_fails_cleanly(capsys):
    code, out = run(capsys, "convert", fixture_path("split_tgt.gm"),
                    "--to", "action-set")
    assert code == 1
    assert "Absentminded" in out


def test_usage_error_exits_2(capsys):
    import contextlib, io
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        code = main(["no-such-command"])
    assert code == 2
