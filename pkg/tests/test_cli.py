import json
from fractions import Fraction

import pytest

from PLocalChi.cli import build_parser, main


def test_chi_csv(capsys):
    assert main(["--quiet", "--format", "csv", "chi", "S3", "--prime", "2",
                 "--kinds", "F", "O"]) == 0
    out = capsys.readouterr().out
    assert out == ("group,order,prime,scope,kind,chi\n"
                   "S3,6,2,nonidentity,F,1\n"
                   "S3,6,2,nonidentity,O,1\n")


def test_chi_json(capsys):
    assert main(["--quiet", "--format", "json", "chi", "A4",
                 "--prime", "2"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert list(document)[:4] == ["group", "order", "prime", "scope"]
    assert document["categories"] == {"S": "1", "T": "1/12", "L": "1/12",
                                      "F": "1/3", "O": "1/3",
                                      "Ftilde": "1/3"}
    assert [c["order"] for c in document["classes"]] == [2, 4]
    assert document["classes"][1]["weighting"]["T"] == "1/12"
    assert document["classes"][0]["coweighting"]["T"] == "1/4"
    assert set(document["residuals"].values()) == {"0"}
    assert "timing" not in document


def test_chi_json_timing(capsys):
    main(["--quiet", "--format", "json", "--timing", "chi", "S3",
          "--prime", "3", "--kinds", "F"])
    document = json.loads(capsys.readouterr().out)
    assert set(document["timing"]) == {"build", "compute"}
    assert document["categories"] == {"F": "1/2"}


def test_chi_without_subgroups(capsys):
    assert main(["--quiet", "--format", "json", "chi", "C7",
                 "--prime", "2", "--kinds", "S"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["categories"] == {"S": "0"}
    assert document["classes"] == []


def test_chi_to_file(tmp_path, capsys):
    out = tmp_path / "a4.csv"
    assert main(["--quiet", "--format", "csv", "--output", str(out), "chi",
                 "A4", "--prime", "2", "--kinds", "T"]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().splitlines()[1] == "A4,12,2,nonidentity,T,1/12"


def test_weights(capsys):
    assert main(["--quiet", "--format", "json", "weights", "A4",
                 "--prime", "2", "--kind", "T", "--side",
                 "coweighting"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert [c["coweighting"] for c in document["classes"]] == ["1/4",
                                                               "-1/6"]
    assert document["classes"][1]["class_size"] == 1


def test_verify(capsys):
    assert main(["--quiet", "--format", "json", "verify", "S3",
                 "--prime", "2", "--product", "C2"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["ok"] is True
    checks = {c["check"]: c["value"] for c in document["checks"]}
    assert checks["product:F"] == "0"
    assert checks["divisibility:S"] == "true"


def test_table(capsys):
    assert main(["--quiet", "--format", "csv", "table", "--family", "A",
                 "--from", "4", "--to", "5", "--prime", "2",
                 "--centric"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "group,order,O,T,L,F,Ftilde"
    assert lines[1] == "A4,12,1/3,1/12,1/12,1/3,1/3"
    assert lines[2].startswith("A5,60,")


def test_scan(capsys):
    assert main(["--quiet", "--format", "json", "scan", "--conjecture",
                 "quillen", "--max-order", "12", "--prime", "2"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["counterexamples"] == []
    assert document["max_order"] == 12
    assert {"S3", "A4"} <= {r["group"] for r in document["rows"]}


def test_scan_table_header(capsys):
    main(["--quiet", "scan", "--conjecture", "quillen", "--max-order", "8",
          "--prime", "2"])
    assert "# only catalog" in capsys.readouterr().err


def test_bad_spec_is_rejected_by_parser():
    with pytest.raises(SystemExit) as info:
        main(["chi", "X9", "--prime", "2"])
    assert info.value.code == 2


def test_exit_codes(monkeypatch):
    assert main(["--quiet", "chi", "A4", "--prime", "4"]) == 2
    monkeypatch.setenv("CHI_MAX_ELEMENTS", "10")
    assert main(["--quiet", "chi", "S4", "--prime", "2"]) == 3


def test_parser_defaults():
    args = build_parser().parse_args(["chi", "S3xS3", "--prime", "3"])
    assert args.scope == "nonidentity"
    assert args.format == "table"
    assert args.spec == "S3xS3"


def test_report_options_after_subcommand(tmp_path, capsys):
    assert main(["--quiet", "chi", "A4", "--prime", "2", "--format",
                 "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["categories"]["F"] == "1/3"
    out = tmp_path / "s3.csv"
    assert main(["--quiet", "weights", "S3", "--prime", "2", "--format",
                 "csv", "--output", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "class,order,class_size," \
                                              "weighting"
    main(["--quiet", "verify", "S3", "--prime", "2", "--format", "json",
          "--timing"])
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_report_options_before_subcommand_survive():
    args = build_parser().parse_args(["--format", "json", "--timing",
                                      "scan", "--conjecture", "quillen"])
    assert args.format == "json" and args.timing
    args = build_parser().parse_args(["--format", "json", "table",
                                      "--format", "csv"])
    assert args.format == "csv"


def test_chi_json_is_stable(capsys):
    argv = ["--quiet", "chi", "S4", "--prime", "2", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert json.dumps(json.loads(first), indent=2) + "\n" == first


def test_verify_failure_has_witness(monkeypatch, capsys):
    monkeypatch.setattr("PLocalChi.verify.verify_combinatorial_identities",
                        lambda group, p: {"identity:poset": Fraction(1)})
    assert main(["--quiet", "verify", "S3", "--prime", "2", "--format",
                 "json"]) == 1
    document = json.loads(capsys.readouterr().out)
    assert document["ok"] is False
    assert document["witness"]["group"] == "S3"
    assert document["witness"]["categories"]["T"] == "1/2"


def test_scan_counterexample_exit_code(monkeypatch, capsys):
    monkeypatch.setattr("PLocalChi.verify.chi_poset", lambda group, p: 1)
    assert main(["--quiet", "scan", "--conjecture", "quillen",
                 "--max-order", "6", "--prime", "2", "--format",
                 "json"]) == 4
    document = json.loads(capsys.readouterr().out)
    assert document["counterexamples"]
    for row in document["counterexamples"]:
        assert row["report"]["scope"] == "nonidentity"
        assert row["report"]["categories"]["S"] == "3"
