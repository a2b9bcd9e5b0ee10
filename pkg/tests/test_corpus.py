import json

from jsonsub.cli import main
from jsonsub.corpus import check_pair, find_pairs, run_corpus, write_report
from worked_schemas import WP_CATEGORY_061, WP_CATEGORY_062


def tree(root, files):
    for name, value in files.items():
        p = root / name
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(value if isinstance(value, str) else json.dumps(value))
    return root


def without_elapsed(path):
    return [{k: v for k, v in json.loads(line).items() if k != "elapsed_ms"}
            for line in path.read_text().splitlines()]


def test_identical_directories(tmp_path):
    files = {"a.json": {"type": "null"}, "sub/b.json": {"type": "string"}}
    old, new = tree(tmp_path / "old", files), tree(tmp_path / "new", files)
    assert find_pairs(old, new) == []
    assert run_corpus(old, new).summary()["pairs"] == 0


def test_widened_enum(tmp_path):
    old = tree(tmp_path / "old", {"wp/category.json": WP_CATEGORY_061})
    new = tree(tmp_path / "new", {"wp/category.json": WP_CATEGORY_062})
    report = run_corpus(old, new)
    assert [r.verdict for r in report.records] == ["Holds"]
    assert run_corpus(old, new, "super").records[0].verdict == "DoesNotHold"


def test_invalid_json_pair(tmp_path):
    old = tree(tmp_path / "old", {"x.json": {"type": "null"}})
    new = tree(tmp_path / "new", {"x.json": "{not json"})
    rec = run_corpus(old, new).records
    assert len(rec) == 1 and rec[0].verdict == "InputError" and rec[0].tag == "InvalidJSON"


def test_errors_never_abort(tmp_path):
    old = tree(tmp_path / "old", {"a.json": {"minLength": -1}, "b.json": {"$ref": "#/nope"},
                                  "c.json": {"$ref": "#"}, "d.json": {"type": "null"}})
    new = tree(tmp_path / "new", {"a.json": {}, "b.json": {}, "c.json": {"type": "null"},
                                  "d.json": {"type": ["null", "string"]}})
    report = run_corpus(old, new)
    got = {r.lhs.rsplit("/", 1)[1]: (r.verdict, r.tag) for r in report.records}
    assert got == {"a.json": ("InputError", "InvalidSchema"),
                   "b.json": ("InputError", "RefTargetMissing"),
                   "c.json": ("Undecidable", "RecursiveRef"),
                   "d.json": ("Holds", None)}
    s = report.summary()
    assert sum(s["verdicts"].values()) == s["pairs"] == 4


def test_report_is_deterministic(tmp_path):
    files_old = {f"s{i}.json": {"type": "integer", "maximum": i} for i in range(6)}
    files_new = {f"s{i}.json": {"type": "number", "maximum": 3} for i in range(6)}
    old, new = tree(tmp_path / "old", files_old), tree(tmp_path / "new", files_new)
    write_report(run_corpus(old, new), tmp_path / "r1.jsonl")
    write_report(run_corpus(old, new, jobs=2), tmp_path / "r2.jsonl")
    assert without_elapsed(tmp_path / "r1.jsonl") == without_elapsed(tmp_path / "r2.jsonl")
    lines = without_elapsed(tmp_path / "r1.jsonl")
    assert lines[-1]["type"] == "summary" and lines[-1]["pairs"] == 6
    assert lines[-1]["verdicts"] == {"DoesNotHold": 2, "Holds": 4}


def test_time_budget_is_reported(tmp_path):
    old = tree(tmp_path / "old", {"a.json": {"type": "string", "pattern": "^[a-z]{300}$"}})
    new = tree(tmp_path / "new", {"a.json": {"type": "string", "maxLength": 400}})
    report = run_corpus(old, new, time_budget=1e-6)
    assert report.records[0].tag == "CapacityLimit"
    assert report.summary(1e-6)["over_time_budget"] == [report.records[0].lhs]


def test_check_pair_direction(tmp_path):
    tree(tmp_path, {"i.json": {"type": "integer"}, "n.json": {"type": "number"}})
    assert check_pair(tmp_path / "i.json", tmp_path / "n.json", "equiv").verdict == "DoesNotHold"


def test_cli_corpus_writes_report_and_figures(tmp_path, capsys):
    old = tree(tmp_path / "old", {"a.json": WP_CATEGORY_062, "b.json": "[", "c.json": {"$ref": "#"}})
    new = tree(tmp_path / "new", {"a.json": WP_CATEGORY_061, "b.json": {}, "c.json": {}})
    out = tmp_path / "out" / "report.jsonl"
    code = main(["corpus", str(old), str(new), "--out", str(out), "--json"])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["pairs"] == 3
    assert summary["tags"] == {"InvalidJSON": 1, "RecursiveRef": 1}
    assert len(out.read_text().splitlines()) == 4
    figs = sorted(p.name for p in (tmp_path / "out" / "report_figures").iterdir())
    assert figs == ["elapsed.png", "failure_tags.png", "verdicts.png"]
    assert all((tmp_path / "out" / "report_figures" / f).read_bytes()[:4] == b"\x89PNG" for f in figs)


def test_cli_corpus_bad_directory(tmp_path, capsys):
    assert main(["corpus", str(tmp_path / "nope"), str(tmp_path)]) == 3
