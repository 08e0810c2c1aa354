import json

import pytest

from regulus.cli import (
    main, parse_eta_expression, EtaParseError, serialize_document,
    parse_document, make_document, format_series, format_offset,
)
from regulus.certify import certify_pair


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("REGULUS_CACHE", str(tmp_path / "cache"))


def test_parse_eta_expression_grammar():
    assert parse_eta_expression("eta(z)") == {1: 1}
    assert parse_eta_expression("eta(5z)^4 * eta(z)^4") == {5: 4, 1: 4}
    assert parse_eta_expression("eta(5z)/eta(z)") == {5: 1, 1: -1}
    assert parse_eta_expression("  eta( 5z ) ^ -2 ") == {5: -2}
    assert parse_eta_expression("eta(5z)*eta(5z)") == {5: 2}
    assert parse_eta_expression("eta(2z)^3/eta(4z)^2*eta(z)") == {2: 3, 4: -2, 1: 1}


def test_parse_eta_expression_errors_carry_position():
    for text, pos in (("eta(3q)", 5), ("eta(z", 5), ("eta(z)^", 7),
                      ("", 0), ("eta(z) eta(z)", 7), ("foo", 0)):
        with pytest.raises(EtaParseError) as err:
            parse_eta_expression(text)
        assert err.value.position == pos, (text, err.value.position)
    with pytest.raises(EtaParseError):
        parse_eta_expression("eta(z)/eta(z)")     # cancels to 1


def test_format_helpers():
    from regulus.qseries import eta_quotient_series
    f = eta_quotient_series({1: 1}, 3)
    assert format_offset(f.offset24) == "1/24"
    assert format_series(f) == "1 - q - q^2 + O(q^3)"
    assert format_offset(0) == "0"
    assert format_offset(-24) == "-1"


def test_cmd_expand(capsys):
    assert main(["expand", "eta(z)", "-p", "3"]) == 0
    out = capsys.readouterr().out
    assert "offset: 1/24" in out
    assert "1 - q - q^2 + O(q^3)" in out

    assert main(["expand", "eta(5z)/eta(z)", "-p", "6", "--integral-part"]) == 0
    assert capsys.readouterr().out.strip() == "1,1,2,3,5,6"

    assert main(["expand", "eta(5z)^4 * eta(z)^4", "-p", "10"]) == 0
    out = capsys.readouterr().out
    assert "offset: 1" in out
    assert out.splitlines()[1].startswith("1 - 4*q + 2*q^2 + 8*q^3 - 5*q^4")


def test_cmd_expand_modular(capsys):
    assert main(["expand", "eta(5z)/eta(z)", "-p", "10", "-m", "5", "--integral-part"]) == 0
    assert capsys.readouterr().out.strip() == "1,1,2,3,0,1,0,3,4,0"


def test_cmd_expand_parse_error(capsys):
    assert main(["expand", "eta(3q)", "-p", "5"]) == 2
    err = capsys.readouterr().err
    assert "position 5" in err


def test_cmd_meta(capsys):
    assert main(["meta", "eta(5z)^4 * eta(z)^4"]) == 0
    out = capsys.readouterr().out
    assert "weight: 4" in out
    assert "level: 5" in out
    assert "classification: cusp form" in out
    assert "d=1: 1" in out and "d=5: 1" in out
    assert "sturm bound: 2" in out


def test_cmd_meta_nonmodular(capsys):
    assert main(["meta", "eta(5z)/eta(z)"]) == 1
    assert "not modular" in capsys.readouterr().err


def test_cmd_certify_json_round_trip(tmp_path, capsys):
    out_path = tmp_path / "cert.json"
    assert main(["certify", "-m", "7", "-l", "17", "--json", str(out_path)]) == 0
    stdout = capsys.readouterr().out
    assert "status=certified" in stdout
    text = out_path.read_text()
    assert '"sturm_bound": 432' in text
    assert '"A": 2023' in text and '"B": 99' in text
    doc = parse_document(text)
    assert serialize_document(doc) == text
    assert doc.certificate.m == 7 and doc.certificate.l == 17
    # key order is pinned
    keys = list(json.loads(text))
    assert keys == ["version", "generated_by", "m", "l", "weight", "level",
                    "character", "sturm_bound", "coefficients_checked",
                    "status", "first_nonzero", "progressions", "timings"]


def test_cmd_certify_failed_pair(capsys):
    assert main(["certify", "-m", "7", "-l", "11"]) == 1
    out = capsys.readouterr().out
    assert "status=failed" in out


def test_cmd_certify_inadmissible(capsys):
    assert main(["certify", "-m", "7", "-l", "7"]) == 2
    assert "30m" in capsys.readouterr().err


def test_cmd_certify_resource_gate(capsys):
    assert main(["certify", "-m", "13", "-l", "16519"]) == 3
    captured = capsys.readouterr()
    assert "status=insufficient_precision" in captured.out
    assert "--extended" in captured.err


def test_cmd_check(capsys):
    assert main(["check", "-A", "5", "-B", "4", "-m", "5", "-n", "2000"]) == 0
    assert "all_zero" in capsys.readouterr().out
    assert main(["check", "-A", "1", "-B", "0", "-m", "7", "-n", "5"]) == 1
    assert "violation at n=0" in capsys.readouterr().out


def test_cmd_check_resource_ceiling(capsys):
    assert main(["check", "-A", "1000000000", "-B", "0", "-m", "7", "-n", "1000000"]) == 3


def test_cmd_scan_l(capsys):
    assert main(["scan-l", "-m", "7", "-l", "20"]) == 0
    assert "l=17 certified" in capsys.readouterr().out


def test_cmd_scan_criterion(capsys):
    assert main(["scan-criterion", "7..13"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("m=7 found") for line in lines)
    assert any(line.startswith("m=11 found") for line in lines)
    assert any(line.startswith("m=13 found") for line in lines)
    assert main(["scan-criterion", "nonsense"]) == 2


def test_cmd_bk(capsys):
    assert main(["bk", "5", "-p", "10"]) == 0
    assert capsys.readouterr().out.strip() == "1,1,2,3,5,6,10,13,19,25"
    assert main(["bk", "5", "-p", "10", "-m", "5"]) == 0
    assert capsys.readouterr().out.strip() == "1,1,2,3,0,1,0,3,4,0"


def test_no_cache_output_identical(capsys):
    assert main(["bk", "5", "-p", "50", "-m", "7"]) == 0
    cached = capsys.readouterr().out
    assert main(["bk", "5", "-p", "50", "-m", "7", "--no-cache"]) == 0
    uncached = capsys.readouterr().out
    assert main(["bk", "5", "-p", "50", "-m", "7"]) == 0   # now a warm cache hit
    warm = capsys.readouterr().out
    assert cached == uncached == warm


def test_usage_errors_exit_2(capsys):
    assert main(["certify", "-m", "7"]) == 2          # missing -l
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()


def test_threads_flag_changes_nothing(capsys):
    assert main(["bk", "5", "-p", "64", "-m", "7", "--threads", "4", "--no-cache"]) == 0
    threaded = capsys.readouterr().out
    assert main(["bk", "5", "-p", "64", "-m", "7", "--no-cache"]) == 0
    assert threaded == capsys.readouterr().out


def test_document_helpers_match_library():
    cert = certify_pair(7, 17)
    doc = make_document(cert)
    text = serialize_document(doc)
    back = parse_document(text)
    assert back.certificate == cert
    assert serialize_document(back) == text
