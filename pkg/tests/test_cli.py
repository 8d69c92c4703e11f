import json

import pytest

from quiverforge import ValidationError
from quiverforge.cache import cache_lookup, cache_store
from quiverforge.cli import main, parse_quiver, serialize_quiver

JORDAN_TEXT = '{"format": 1, "vertices": ["1"], "arrows": [{"id": "a", "tail": "1", "head": "1"}]}'

KRON2_TEXT = json.dumps(
    {
        "format": 1,
        "vertices": ["1", "2"],
        "arrows": [
            {"id": "a1", "tail": "1", "head": "2"},
            {"id": "a2", "tail": "1", "head": "2"},
        ],
        "dimension_vectors": {"d": [1, 1]},
        "stability_parameters": {"theta": [-1, 1]},
    }
)


@pytest.fixture
def kron2_file(tmp_path):
    path = tmp_path / "kron2.json"
    path.write_text(KRON2_TEXT)
    return str(path)


@pytest.fixture
def jordan_file(tmp_path):
    path = tmp_path / "jordan.json"
    path.write_text(JORDAN_TEXT)
    return str(path)


# -- parsing


def test_parse_jordan():
    quiver, _, _ = parse_quiver(JORDAN_TEXT)
    assert quiver.vertices == ("1",)
    assert len(quiver.arrows) == 1
    assert quiver.arrows[0].tail == quiver.arrows[0].head == "1"


def test_parse_kronecker_with_named_vectors():
    quiver, named_d, named_theta = parse_quiver(KRON2_TEXT)
    assert len(quiver.arrows) == 2
    assert named_d["d"] == (1, 1)
    assert named_theta["theta"] == (-1, 1)


def test_parse_rejects_dangling_vertex():
    bad = '{"format": 1, "vertices": ["1"], "arrows": [{"id": "a", "tail": "1", "head": "2"}]}'
    with pytest.raises(ValidationError):
        parse_quiver(bad)


def test_parse_rejects_missing_format():
    with pytest.raises(ValidationError):
        parse_quiver('{"vertices": ["1"], "arrows": []}')


def test_parse_rejects_bad_json_with_location():
    with pytest.raises(ValidationError) as info:
        parse_quiver('{"format": 1,')
    assert "line" in str(info.value)


def test_parse_rejects_wrong_vector_length():
    bad = json.loads(KRON2_TEXT)
    bad["dimension_vectors"] = {"d": [1]}
    with pytest.raises(ValidationError):
        parse_quiver(json.dumps(bad))


def test_roundtrip_is_identity_on_canonical_form():
    quiver, _, _ = parse_quiver(KRON2_TEXT)
    text = serialize_quiver(quiver)
    again, _, _ = parse_quiver(text)
    assert again == quiver
    assert serialize_quiver(again) == text


def test_hash_invariant_under_arrow_reordering():
    data = json.loads(KRON2_TEXT)
    data["arrows"] = list(reversed(data["arrows"]))
    reordered, _, _ = parse_quiver(json.dumps(data))
    original, _, _ = parse_quiver(KRON2_TEXT)
    assert reordered.content_hash() == original.content_hash()


# -- dispatch


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kac_command_payload(capsys, kron2_file):
    code, out, err = run_cli(capsys, ["kac", "--quiver", kron2_file, "--d", "1,1"])
    assert code == 0
    assert out.strip() == '{"polynomial":[1,1]}'
    assert err.strip()  # human summary on stderr


def test_betti_command_payload(capsys, kron2_file):
    code, out, _ = run_cli(
        capsys, ["betti", "--quiver", kron2_file, "--d", "1,1", "--theta", "-1,1"]
    )
    assert code == 0
    assert json.loads(out) == {"e": 1, "betti": [1, 0, 1]}


def test_count_command(capsys, kron2_file):
    code, out, _ = run_cli(
        capsys, ["count", "--quiver", kron2_file, "--d", "d", "--q", "2", "--cross-check"]
    )
    assert code == 0
    payload = json.loads(out)
    assert (payload["M"], payload["I"], payload["A"]) == (4, 3, 3)


def test_forms_roots_stability(capsys, kron2_file):
    code, out, _ = run_cli(capsys, ["forms", "--quiver", kron2_file, "--d", "2,1"])
    assert code == 0 and json.loads(out)["tits"] == 1
    code, out, _ = run_cli(capsys, ["roots", "--quiver", kron2_file, "--d", "3,3"])
    assert code == 0
    assert [1, 2] in json.loads(out)["roots"]
    code, out, _ = run_cli(
        capsys,
        ["stability", "--quiver", kron2_file, "--d", "1,1", "--theta", "theta", "--q", "2"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["generic"] is True
    assert payload["verdicts"] == {"stable": 3, "semistable-not-stable": 0, "unstable": 1}


def test_hua_and_moduli_commands(capsys, jordan_file, kron2_file):
    code, out, _ = run_cli(capsys, ["hua", "--quiver", jordan_file, "--q", "2", "--degree", "2"])
    assert code == 0 and json.loads(out)["max_discrepancy"] == "0"
    code, out, _ = run_cli(
        capsys,
        ["moduli", "--quiver", kron2_file, "--d", "1,1", "--theta", "-1,1", "--q", "5"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["level_set"] == 120 and payload["point_count"] == 30
    assert payload["identity_holds"] is True
    code, out, _ = run_cli(
        capsys,
        ["moduli", "--quiver", kron2_file, "--d", "1,1", "--eta", "1,0", "--q", "3"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["level_set"] == 0 and payload["trace_obstruction_ok"] is False


def test_exit_code_domain_error(capsys, kron2_file):
    code, out, _ = run_cli(capsys, ["count", "--quiver", kron2_file, "--d", "1,1", "--q", "6"])
    assert code == 1
    assert json.loads(out)["error"]["kind"] == "ValidationError"


def test_exit_code_cap(capsys, kron2_file):
    code, out, _ = run_cli(
        capsys, ["count", "--quiver", kron2_file, "--d", "2,2", "--q", "3", "--cap", "10"]
    )
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "cap"


def test_exit_code_usage(capsys, kron2_file):
    with pytest.raises(SystemExit) as info:
        main(["count", "--quiver", kron2_file, "--nonsense"])
    assert info.value.code == 64


def test_text_mode(capsys, kron2_file):
    code, out, _ = run_cli(
        capsys, ["kac", "--quiver", kron2_file, "--d", "1,1", "--text"]
    )
    assert code == 0
    assert not out.startswith("{")  # human text on stdout, not JSON
    assert "[1, 1]" in out


def test_output_is_deterministic(capsys, kron2_file):
    _, out1, _ = run_cli(capsys, ["count", "--quiver", kron2_file, "--d", "1,1", "--q", "3"])
    _, out2, _ = run_cli(capsys, ["count", "--quiver", kron2_file, "--d", "1,1", "--q", "3"])
    assert out1 == out2


# -- cache


def test_cache_store_then_lookup(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    cache_store(path, "h", "kac", {"d": [1, 1]}, "0.1.0", {"polynomial": [1, 1]})
    assert cache_lookup(path, "h", "kac", {"d": [1, 1]}, "0.1.0") == {"polynomial": [1, 1]}


def test_cache_miss_on_empty_and_version(tmp_path):
    path = str(tmp_path / "cache.jsonl")
    assert cache_lookup(path, "h", "kac", {}, "0.1.0") is None
    cache_store(path, "h", "kac", {}, "0.0.9", {"x": 1})
    assert cache_lookup(path, "h", "kac", {}, "0.1.0") is None


def test_cache_skips_corrupt_lines(tmp_path, capsys):
    path = tmp_path / "cache.jsonl"
    path.write_text("not json\n")
    cache_store(str(path), "h", "op", {"a": 1}, "v", 42)
    assert cache_lookup(str(path), "h", "op", {"a": 1}, "v") == 42
    assert "corrupt" in capsys.readouterr().err


def test_cli_uses_cache(capsys, kron2_file, tmp_path):
    cache = str(tmp_path / "cache.jsonl")
    run_cli(capsys, ["kac", "--quiver", kron2_file, "--d", "1,1", "--cache", cache])
    code, out, err = run_cli(
        capsys, ["kac", "--quiver", kron2_file, "--d", "1,1", "--cache", cache]
    )
    assert code == 0
    assert out.strip() == '{"polynomial":[1,1]}'
    assert "cached" in err


def test_cache_env_var(capsys, kron2_file, tmp_path, monkeypatch):
    cache = str(tmp_path / "env-cache.jsonl")
    monkeypatch.setenv("QUIVERFORGE_CACHE", cache)
    run_cli(capsys, ["kac", "--quiver", kron2_file, "--d", "1,1"])
    _, _, err = run_cli(capsys, ["kac", "--quiver", kron2_file, "--d", "1,1"])
    assert "cached" in err


def test_cache_unwritable_warns_but_computes(capsys, kron2_file):
    code, out, err = run_cli(
        capsys,
        ["kac", "--quiver", kron2_file, "--d", "1,1", "--cache", "/nonexistent-dir/c.jsonl"],
    )
    assert code == 0
    assert out.strip() == '{"polynomial":[1,1]}'
    assert "warning" in err


def test_verify_command(capsys, kron2_file):
    code, out, err = run_cli(capsys, ["verify", "--suite", "small"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["criteria"]) == 10
    assert err.count("PASS") >= 10
