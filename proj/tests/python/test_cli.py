import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("RIESZ_LAB_BIN", "riesz-lab")

SMALL = {"experiment": "trace_slope", "n": 1, "alpha": 2, "k_values": [16, 32, 64, 128]}


@pytest.fixture
def env(tmp_path):
    e = dict(os.environ)
    e["RIESZ_LAB_CACHE"] = str(tmp_path / "cache")
    return e


def run(args, env, cwd):
    return subprocess.run([BIN, *args], env=env, cwd=cwd, capture_output=True, text=True, timeout=600)


def write(path, cfg):
    path.write_text(json.dumps(cfg))
    return path


def test_list_experiments(env, tmp_path):
    r = run(["list-experiments"], env, tmp_path)
    assert r.returncode == 0
    names = [line.split()[0] for line in r.stdout.splitlines()]
    assert "riesz_converge" in names and "weyl_identity" in names and len(names) == 9


def test_pass_writes_results_and_export(env, tmp_path):
    cfg = write(tmp_path / "a.json", SMALL)
    r = run(["run", str(cfg), "--output", "out"], env, tmp_path)
    assert r.returncode == 0, r.stderr
    csvs = list((tmp_path / "out").glob("*.csv"))
    assert len(csvs) == 1
    run_id = csvs[0].stem
    assert (tmp_path / "out" / f"{run_id}.json").exists()
    exported = run(["export", run_id, "--dir", "out"], env, tmp_path)
    assert exported.returncode == 0
    assert exported.stdout == csvs[0].read_text()
    js = run(["export", run_id, "--dir", "out", "--format", "json"], env, tmp_path)
    assert json.loads(js.stdout)["run_id"] == run_id
    assert run(["export", "0000000000000000", "--dir", "out"], env, tmp_path).returncode == 1


def test_riesz_converge_passes(env, tmp_path):
    cfg = write(tmp_path / "rc.json", {"experiment": "riesz_converge", "n": 2, "lambda": 1, "K": 12,
                                       "R_values": [4, 8, 16, 32, 64, 128], "seed": 5, "points": 17})
    r = run(["run", str(cfg), "--output", "out"], env, tmp_path)
    assert r.returncode == 0, r.stdout + r.stderr


def test_failing_verdict_exits_two(env, tmp_path):
    cfg = write(tmp_path / "w.json", {"experiment": "wave_support", "t": 1, "margin": 0.1, "k_values": [16, 32]})
    r = run(["run", str(cfg), "-q"], env, tmp_path)
    assert r.returncode == 2
    assert r.stdout == ""


def test_config_errors_exit_three(env, tmp_path):
    bad = write(tmp_path / "bad.json", {"experiment": "trace_slope", "n": 1, "k_values": [1, 2, 3, 4]})
    r = run(["run", str(bad)], env, tmp_path)
    assert r.returncode == 3
    assert "/alpha" in r.stderr
    assert run(["run", str(tmp_path / "missing.json")], env, tmp_path).returncode == 3
    assert run(["run"], env, tmp_path).returncode == 3
    assert run(["frobnicate"], env, tmp_path).returncode == 3


def test_cache_is_transparent_and_survives_corruption(env, tmp_path):
    # The wave experiment loads rules and tables through the cache; its
    # verdict at these small K is a failure, exit code 2.
    cfg = write(tmp_path / "w.json", {"experiment": "wave_support", "t": 1, "margin": 0.1, "k_values": [16, 32]})
    outputs = []
    for args in (["run", str(cfg), "--output", "cold"], ["run", str(cfg), "--output", "warm"]):
        assert run(args, env, tmp_path).returncode == 2
    cache = Path(env["RIESZ_LAB_CACHE"])
    files = [p for p in cache.rglob("*") if p.is_file()]
    assert files
    for p in files:
        data = bytearray(p.read_bytes())
        data[len(data) // 2] ^= 0xFF
        p.write_bytes(bytes(data))
    shown = run(["show-cache"], env, tmp_path)
    assert shown.returncode == 0 and "CORRUPT" in shown.stdout
    rebuilt = run(["run", str(cfg), "--output", "rebuilt"], env, tmp_path)
    assert rebuilt.returncode == 2
    assert "warning" in rebuilt.stderr
    assert "CORRUPT" not in run(["show-cache"], env, tmp_path).stdout
    assert run(["run", str(cfg), "--no-cache", "--output", "nocache"], env, tmp_path).returncode == 2
    for d in ("cold", "warm", "rebuilt", "nocache"):
        outputs.append(next((tmp_path / d).glob("*.csv")).read_bytes())
    assert all(o == outputs[0] for o in outputs)
