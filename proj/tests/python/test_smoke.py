import math
import os
import subprocess

import pytest

autoseq = pytest.importorskip("autoseq")


def test_builtins_evaluate():
    names = autoseq.builtin_names()
    assert "thue-morse" in names
    tm = autoseq.builtin("thue-morse")
    assert tm.base == 2
    assert tm.eval(0) == 1
    assert tm.eval(3) == 1
    values = tm.values(16)
    expected = [1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1, 1, -1, -1, 1]
    assert [int(v.real) for v in values] == expected


def test_parse_emit_round_trip():
    tm = autoseq.builtin("thue-morse")
    back = autoseq.parse(autoseq.emit(tm))
    assert autoseq.same_sequence(tm, back)


def test_partial_sum_and_balance():
    tm = autoseq.builtin("thue-morse")
    assert autoseq.partial_sum(tm, 2**16) == 0
    assert autoseq.is_balanced(tm)["balanced"]
    assert autoseq.is_totally_balanced(tm, 12)["totally_balanced"]
    par = autoseq.builtin("parity")
    cert = autoseq.is_totally_balanced(par, 2)
    assert not cert["totally_balanced"]
    assert (cert["witness_q"], cert["witness_r"]) == (2, 0)


def test_exp_sum_and_sup():
    tm = autoseq.builtin("thue-morse")
    sup = autoseq.sup_linear(tm, 4, 1e-6)
    assert abs(sup["value"] - 4.0 / (3.0 * math.sqrt(3.0))) < 1e-6
    mean = autoseq.exp_sum(tm, 1.0 / 3.0, 2**12)
    assert abs(mean) <= 1.0


def test_constructions():
    tm = autoseq.builtin("thue-morse")
    odd = autoseq.restrict_ap(tm, 2, 1)
    for n in range(200):
        assert odd.eval(n) == -tm.eval(n)
    b4 = autoseq.base_change(tm, 2)
    assert b4.base == 4
    for n in range(500):
        assert b4.eval(n) == tm.eval(n)


def test_frequencies_and_gcd():
    tm = autoseq.builtin("thue-morse")
    pi = autoseq.frequencies(tm, 3)
    for row in pi:
        for v in row:
            assert abs(v - 0.5) < 1e-12
    assert autoseq.cycle_gcd(tm) == 1


def test_cli_round_trip(tmp_path):
    cli = os.environ.get("AUTOSEQ_CLI")
    if not cli:
        pytest.skip("AUTOSEQ_CLI not set")
    out = tmp_path / "tm.aut"
    subprocess.run([cli, "builtin", "thue-morse", "-o", str(out)], check=True)
    result = subprocess.run(
        [cli, "eval", str(out), "--n", "0", "--count", "4"],
        check=True,
        capture_output=True,
        text=True,
    )
    assert "a(3) = 1" in result.stdout
    bad = subprocess.run(
        [cli, "eval", str(tmp_path / "missing.aut"), "--n", "5"],
        capture_output=True,
        text=True,
    )
    assert bad.returncode == 1
    usage = subprocess.run([cli, "frobnicate"], capture_output=True, text=True)
    assert usage.returncode != 0
