import json

from cli_gateway import main as cli
from cli_gateway.core import storage
from cli_gateway.core.config import Settings
from cli_gateway.core.status import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK


def test_sing_reports_a1(capsys):
    assert cli.main(["sing", "2", "1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["chain"] == [-2]
    assert payload["mld"] == "4/7"
    assert payload["one_seventh_lt"] is True


def test_sing_d_scaled(capsys):
    assert cli.main(["sing", "2", "1", "--d", "2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert (payload["m"], payload["k"], payload["d"]) == (4, 2, 2)


def test_sing_rejects_non_coprime(capsys):
    assert cli.main(["sing", "4", "2"]) == EXIT_ERROR
    assert "not_coprime" in capsys.readouterr().err


def test_hj_both_directions(capsys):
    assert cli.main(["hj", "7", "3"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["chain"] == [-2, -4]
    assert cli.main(["hj", "--chain", "-2", "-4"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert (payload["m"], payload["k"], payload["reversed_k"]) == (7, 3, 5)


def test_hj_needs_input(capsys):
    assert cli.main(["hj"]) == EXIT_ERROR


def test_verify_row(capsys):
    assert cli.main(["verify-row", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "row 5" in out
    assert "FAIL" not in out


def test_verify_unknown_row(capsys):
    assert cli.main(["verify-row", "42"]) == EXIT_ERROR
    assert "unknown_row" in capsys.readouterr().err


def test_complement_check_row_4(capsys):
    assert cli.main(["complement-check", "4"]) == EXIT_OK
    assert "verifies" in capsys.readouterr().out


def test_complement_check_with_coefficients(capsys):
    assert cli.main(["complement-check", "4", "--n", "7", "--coeff", "C=6/7", "C2=2/7"]) == EXIT_OK
    assert cli.main(["complement-check", "4", "--n", "7", "--coeff", "C=6/7", "C2=1/7"]) == EXIT_MISMATCH


def test_complement_check_bad_option(capsys):
    assert cli.main(["complement-check", "4", "--option", "3"]) == EXIT_ERROR


def test_export_dot_for_one_row(tmp_path, capsys):
    assert cli.main(["export-dot", "--row", "3", "--output", str(tmp_path)]) == EXIT_OK
    text = (tmp_path / "dot" / "row-03.dot").read_text()
    assert "filled" in text
    assert "box" in text


def test_graph_to_dot(seed):
    dot = storage.graph_to_dot(seed.graph, "seed")
    assert len(dot.get_nodes()) == 3
    assert len(dot.get_edges()) == 3
    assert dot.get_node("S")[0].get("style") == "filled"
    assert dot.get_node("F1")[0].get("shape") == "box"


def test_enumerate_writes_table_and_dot_bundle(tmp_path, table, capsys):
    code = cli.main(["enumerate", "--output", str(tmp_path), "--verify-golden", "--parallelism", "2"])
    assert code == EXIT_OK
    written = (tmp_path / storage.TABLE_FILE).read_text()
    assert written == storage.table_json(table)
    assert storage.read_table(tmp_path / storage.TABLE_FILE) == table
    assert sorted(p.name for p in (tmp_path / storage.DOT_DIR).iterdir())[:2] == ["row-01.dot", "row-02.dot"]
    assert "19 surfaces" in capsys.readouterr().out


def test_enumerate_state_bound_is_an_error(tmp_path, capsys):
    assert cli.main(["enumerate", "--output", str(tmp_path), "--max-states", "5"]) == EXIT_ERROR
    assert "state_bound" in capsys.readouterr().err


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("DELPEZZO_MAX_N", "6")
    monkeypatch.setenv("DELPEZZO_PARALLELISM", "4")
    settings = Settings()
    assert settings.max_n == 6
    assert settings.parallelism == 4
    assert settings.deterministic is True
