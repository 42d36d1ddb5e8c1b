import io
import itertools
import json
import os
import random

import pytest

from optlrc.cli import decode_dir, encode_file, main, repair_dir
from optlrc.errors import ChecksumMismatch, RankDeficient, TooManyLocalErasures
from optlrc.storage import (
    Manifest,
    bytes_to_symbols,
    decode_symbols,
    encode_symbols,
    read_manifest,
    shard_name,
    symbols_to_bytes,
)
from optlrc.field import BaseField


def _file(tmp_path, size, seed=0):
    data = random.Random(seed).randbytes(size)
    path = tmp_path / "input.bin"
    path.write_bytes(data)
    return path, data


def _shards(d, n):
    return {i: (d / shard_name(i)).read_bytes() for i in range(n)}


def _run(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


# -- packing ------------------------------------------------------------------------------


@pytest.mark.parametrize("field", ["gf2:8", "gf2:4", "gf2:16", "prime:13", "prime:257", "prime:65537"])
def test_packing_round_trip(field):
    base = BaseField.parse(field)
    data = random.Random(1).randbytes(1001)
    symbols = bytes_to_symbols(data, base)
    assert int(symbols.max()) < base.order
    assert symbols_to_bytes(symbols, base, len(data)) == data
    assert (decode_symbols(encode_symbols(symbols, base), base) == symbols).all()


# -- encode -------------------------------------------------------------------------------


def test_empty_file(tmp_path):
    src = tmp_path / "empty"
    src.write_bytes(b"")
    m = encode_file(src, tmp_path / "s", 9, 3, 2)
    assert m.stripe_count == 0
    assert all(v == b"" for v in _shards(tmp_path / "s", 9).values())
    assert decode_dir(tmp_path / "s", tmp_path / "out") == b""


def test_one_byte_file(tmp_path):
    src, data = _file(tmp_path, 1)
    m = encode_file(src, tmp_path / "s", 9, 3, 2)
    assert m.stripe_count == 1
    assert all(len(v) == 4 for v in _shards(tmp_path / "s", 9).values())


def test_manifest_fields_and_determinism(tmp_path):
    src, data = _file(tmp_path, 3000)
    encode_file(src, tmp_path / "a", 8, 4, 3, field="prime:13")
    encode_file(src, tmp_path / "b", 8, 4, 3, field="prime:13")
    text = (tmp_path / "a" / "manifest.json").read_text()
    assert text == (tmp_path / "b" / "manifest.json").read_text()
    assert _shards(tmp_path / "a", 8) == _shards(tmp_path / "b", 8)
    d = json.loads(text)
    assert list(d) == ["format_version", "params", "field", "alphas", "original_length", "stripe_count", "checksum", "shards"]
    assert d["params"] == {"n": 8, "k": 4, "r": 3, "delta": 2}
    assert d["field"]["base"] == "prime:13"
    assert d["shards"][0] == "shard_000.bin"


@pytest.mark.parametrize("field", ["gf2:8", "prime:13", "gf2:4"])
def test_round_trip_all_shards(tmp_path, field):
    src, data = _file(tmp_path, 5000)
    encode_file(src, tmp_path / "s", 9, 3, 2, field=field)
    assert decode_dir(tmp_path / "s", tmp_path / "out") == data
    assert (tmp_path / "out").read_bytes() == data


def test_every_three_deletions_8_4_3(tmp_path):
    src, data = _file(tmp_path, 2000)
    d = tmp_path / "s"
    encode_file(src, d, 8, 4, 3)
    shards = _shards(d, 8)
    for E in itertools.combinations(range(8), 3):
        for i in E:
            os.remove(d / shard_name(i))
        assert decode_dir(d, tmp_path / "out") == data
        for i in E:
            (d / shard_name(i)).write_bytes(shards[i])


def test_too_many_deletions(tmp_path):
    src, data = _file(tmp_path, 100)
    d = tmp_path / "s"
    encode_file(src, d, 8, 4, 3)
    for i in (0, 1, 2, 3, 4):
        os.remove(d / shard_name(i))
    with pytest.raises(RankDeficient):
        decode_dir(d, tmp_path / "out")
    code, _ = _run("decode", str(d), str(tmp_path / "out"))
    assert code == 3


def test_corruption_detected(tmp_path):
    src, data = _file(tmp_path, 100)
    d = tmp_path / "s"
    encode_file(src, d, 9, 3, 2)
    payload = bytearray((d / shard_name(0)).read_bytes())
    payload[0] ^= 1
    (d / shard_name(0)).write_bytes(bytes(payload))
    with pytest.raises(ChecksumMismatch):
        decode_dir(d, tmp_path / "out")
    assert _run("decode", str(d), str(tmp_path / "out"))[0] == 4


# -- repair -------------------------------------------------------------------------------


def test_repair_single_shard(tmp_path):
    src, data = _file(tmp_path, 4000)
    d = tmp_path / "s"
    encode_file(src, d, 9, 3, 2)
    original = _shards(d, 9)
    os.remove(d / shard_name(1))
    reads = []
    assert repair_dir(d, [1], reads=reads) == [1]
    assert reads == [0, 2]
    assert _shards(d, 9) == original


def test_repair_two_in_group_delta2_fails(tmp_path):
    src, data = _file(tmp_path, 100)
    d = tmp_path / "s"
    encode_file(src, d, 9, 3, 2)
    os.remove(d / shard_name(0))
    os.remove(d / shard_name(1))
    with pytest.raises(TooManyLocalErasures):
        repair_dir(d, [0, 1])
    assert _run("repair", str(d), "0", "1")[0] == 3


def test_repair_two_in_group_delta3(tmp_path):
    src, data = _file(tmp_path, 500)
    d = tmp_path / "s"
    encode_file(src, d, 8, 3, 2, delta=3, field="prime:13")
    original = _shards(d, 8)
    os.remove(d / shard_name(4))
    os.remove(d / shard_name(6))
    reads = []
    assert repair_dir(d, [4, 6], reads=reads) == [4, 6]
    assert set(reads) <= {5, 7} and len(reads) == 2
    assert _shards(d, 8) == original


def test_repair_global_fallback(tmp_path):
    src, data = _file(tmp_path, 300)
    d = tmp_path / "s"
    encode_file(src, d, 9, 3, 2)
    original = _shards(d, 9)
    for i in (0, 1):
        os.remove(d / shard_name(i))
    assert _run("repair", str(d), "0", "1", "--allow-global")[0] == 0
    assert _shards(d, 9) == original


def test_verbose_repair_logs_reads(tmp_path, capsys):
    src, data = _file(tmp_path, 300)
    d = tmp_path / "s"
    encode_file(src, d, 9, 3, 2)
    os.remove(d / shard_name(4))
    assert main(["-v", "repair", str(d), "4"], out=io.StringIO()) == 0
    err = capsys.readouterr().err
    reads = [line.split()[-1] for line in err.splitlines() if " read " in line]
    assert reads == [shard_name(3), shard_name(5)]


# -- command line ---------------------------------------------------------------------------


def test_cli_encode_decode(tmp_path):
    src, data = _file(tmp_path, 777)
    d = tmp_path / "s"
    assert _run("encode", str(src), str(d), "--n", "9", "--k", "3", "--r", "2")[0] == 0
    assert read_manifest(d).original_length == 777
    assert _run("decode", str(d), str(tmp_path / "out"))[0] == 0
    assert (tmp_path / "out").read_bytes() == data


def test_cli_param_error(tmp_path):
    src, _ = _file(tmp_path, 10)
    assert _run("encode", str(src), str(tmp_path / "s"), "--n", "10", "--k", "3", "--r", "2")[0] == 2
    assert _run("encode", str(src), str(tmp_path / "s"), "--n", "9", "--k", "3", "--r", "2", "--field", "prime:5")[0] == 2


def test_cli_missing_input(tmp_path):
    assert _run("encode", str(tmp_path / "nope"), str(tmp_path / "s"), "--n", "9", "--k", "3", "--r", "2")[0] == 2


def test_cli_missing_manifest(tmp_path):
    assert _run("repair", str(tmp_path), "0")[0] == 4


def test_cli_modulus_flag(tmp_path):
    src, data = _file(tmp_path, 50)
    d = tmp_path / "s"
    argv = ["encode", str(src), str(d), "--n", "9", "--k", "3", "--r", "2", "--field", "prime:7", "--modulus", "3,0,0,1,1"]
    assert _run(*argv)[0] == 0
    assert Manifest.from_json((d / "manifest.json").read_text()).field["modulus"] == "3,0,0,1,1"
    assert decode_dir(d, tmp_path / "out") == data


@pytest.mark.parametrize(
    "shape,mu,d,pdec",
    [(("9", "3", "2"), 2, 6, ("27", "28")), (("8", "4", "3"), 2, 4, ("34", "35"))],
)
def test_analyze_construction(shape, mu, d, pdec):
    n, k, r = shape
    code, out = _run("analyze", "--n", n, "--k", k, "--r", r, "--field", "prime:13", "--trials", "2000", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["matroid"]["mu"] == mu
    assert rep["matroid"]["d_formula"] == rep["matroid"]["d_oracle"] == d
    assert rep["matroid"]["optimal_lrc"]["optimal"]
    p = rep["decodability"]["p_exact"]
    assert (p["numerator"], p["denominator"]) == pdec


def test_analyze_mds_dump(tmp_path):
    from optlrc.construction import dump_matrix
    from optlrc.field import Matrix

    F = BaseField.prime(13)
    path = tmp_path / "rs.txt"
    path.write_text(dump_matrix(Matrix(F, [[pow(a, i, 13) for a in range(6)] for i in range(3)])))
    code, out = _run("analyze", "--matrix", str(path), "--r", "2", "--trials", "100")
    assert code == 1
    assert "not locality-optimal" in out


def test_generator_dump_feeds_analyze(tmp_path):
    path = tmp_path / "g.txt"
    assert _run("generator", "--n", "9", "--k", "3", "--r", "2", "--field", "prime:7", "-o", str(path))[0] == 0
    code, out = _run("analyze", "--matrix", str(path), "--r", "2", "--trials", "100", "--json")
    assert code == 0
    assert json.loads(out)["decodability"]["p_brute"] == {"numerator": "27", "denominator": "28"}


def test_analyze_budget_error(tmp_path):
    # n = 21 exceeds the exhaustive distance limit
    code, _ = _run("analyze", "--n", "21", "--k", "5", "--r", "2", "--field", "prime:17", "--trials", "10")
    assert code == 2
