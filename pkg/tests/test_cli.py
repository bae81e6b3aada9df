import argparse
import json
import numpy as np
import pandas as pd
import pytest
from moebiusql.arith.cache import SieveCache
from moebiusql.arith.sieve import sieve
from moebiusql.cli import EXIT_INVALID, EXIT_OK, build_parser, exponent_range, int_list, main, resolve_config


def test_int_list():
    assert int_list("2**10, 5,10**3") == [1024, 5, 1000]
    assert int_list("0..4") == [0, 1, 2, 3, 4]
    assert int_list("1,3..5,9") == [1, 3, 4, 5, 9]
    assert int_list("8,16,...,256") == [8, 16, 32, 64, 128, 256]
    assert int_list("1,3,...,81") == [1, 3, 9, 27, 81]

@pytest.mark.parametrize("text", ["8,...,256", "8,16,...", "8,12,...,24", "8,16,...,100", "x", "1..y"])
def test_int_list_errors(text):
    with pytest.raises(argparse.ArgumentTypeError):
        int_list(text)

def test_exponent_range():
    assert exponent_range("10:13") == [1024, 2048, 4096, 8192]
    assert exponent_range("2**8,2**9") == [256, 512]
    with pytest.raises(argparse.ArgumentTypeError):
        exponent_range("12:10")

def test_flags_after_command():
    args = build_parser().parse_args(["entropy", "--system", "rotation:golden", "--m-list", "8,16", "--no-cache", "-q"])
    assert (args.command, args.system, args.m_list, args.use_cache, args.quiet) == ("entropy", "rotation:golden", [8, 16], False, True)

def test_sieve_writes_outputs(tmp_path):
    assert main(["sieve", "--n-max", "10**4", "--out-dir", str(tmp_path), "-q"]) == EXIT_OK
    for name in ("sieve.csv", "sieve.meta.json", "sieve.gp", "meta.json"):
        assert (tmp_path / name).is_file()
    frame = pd.read_csv(tmp_path / "sieve.csv")
    assert frame["mertens"].tolist()[-1] == -23
    run = json.loads((tmp_path / "meta.json").read_text())
    assert (run["command"], run["sieve_n_max"], run["passed"]) == ("sieve", 10**4, True)
    assert run["parameters"]["n_max"] == 10**4

def test_json_format(tmp_path):
    assert main(["davenport", "--n-max", "10**4", "--out-dir", str(tmp_path), "--format", "json", "-q"]) == EXIT_OK
    assert (tmp_path / "davenport.json").is_file()
    assert not (tmp_path / "davenport.gp").exists()

def test_bad_config_file(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"bogus": 1}))
    assert main(["sieve", "--config", str(config), "--out-dir", str(tmp_path), "-q"]) == EXIT_INVALID

def test_invalid_parameters(tmp_path):
    argv = ["entropy", "--n-max", "4096", "--m-list", "16,8", "--out-dir", str(tmp_path), "-q"]
    assert main(argv) == EXIT_INVALID
    with pytest.raises(SystemExit) as error:
        main(["sieve", "--n-max", "many"])
    assert error.value.code == 2

def test_simulate_with_union(tmp_path):
    argv = [
        "simulate", "--system", "rotation:golden", "--seeds", "0,1,2,3", "--n-grid", "2**8,2**9,2**10,2**11",
        "--union", "--m", "100", "--delta", "0.2", "--n-max", "4096", "--out-dir", str(tmp_path), "-q",
    ]
    assert main(argv) == EXIT_OK
    assert len(pd.read_csv(tmp_path / "decay.csv")) == 16
    assert len(pd.read_csv(tmp_path / "union.csv")) == 4

def test_report_subset(tmp_path):
    argv = ["report", "--suite", "quick", "--criteria", "2,3", "--out-dir", str(tmp_path), "-q"]
    assert main(argv) == EXIT_OK
    report = pd.read_csv(tmp_path / "report.csv")
    assert report["criterion"].tolist() == ["2-squarefree_density", "3-euler_identity"]
    assert report["passed"].all()

def test_documented_spellings_parse():
    parser = build_parser()
    args = parser.parse_args(["simulate", "--system", "thue_morse", "--seeds", "0..49", "--ngrid", "10:22", "--out", "decay.csv"])
    config = resolve_config(args)
    assert config.seeds == list(range(50))
    assert config.n_grid == [2**e for e in range(10, 23)]
    assert (config.out_dir, config.out_name, config.format) == (".", "decay", "csv")
    args = parser.parse_args(["entropy", "--system", "thue_morse", "--n", "4194304", "--m", "8,16,...,256"])
    assert (args.n_max, args.m_list) == (4194304, [8, 16, 32, 64, 128, 256])
    args = parser.parse_args(["sieve", "--n", "10", "--no-cache"])
    assert (args.n_max, args.use_cache) == (10, False)

def test_out_file_needs_a_data_suffix(tmp_path):
    assert main(["sieve", "--n", "100", "--out", str(tmp_path / "sums.txt"), "-q"]) == EXIT_INVALID

def test_mirsky_writes_predicted_correlations(tmp_path):
    assert main(["mirsky", "--n", "1000000", "--kmax", "16", "--out-dir", str(tmp_path), "-q"]) == EXIT_OK
    frame = pd.read_csv(tmp_path / "corr.csv")
    assert len(frame) == 17
    assert frame["k"].tolist() == list(range(17))
    assert "predicted" in frame.columns
    assert (frame["re"] - frame["predicted"]).abs().max() < 1e-2

def test_simulate_writes_named_decay_table(tmp_path):
    argv = ["simulate", "--system", "rotation:golden", "--seeds", "0..3", "--ngrid", "8:11", "--out", "decay_run.csv", "--out-dir", str(tmp_path), "-q"]
    assert main(argv) == EXIT_OK
    assert len(pd.read_csv(tmp_path / "decay_run.csv")) == 16
    assert (tmp_path / "decay_run.meta.json").is_file()
    assert not (tmp_path / "decay.csv").exists()

def test_entropy_over_doubling_block_lengths(tmp_path):
    argv = ["entropy", "--system", "thue_morse", "--n", "4194304", "--m", "8,16,...,256", "--out-dir", str(tmp_path), "-q"]
    assert main(argv) == EXIT_OK
    frame = pd.read_csv(tmp_path / "entropy.csv")
    assert frame["m"].tolist() == [8, 16, 32, 64, 128, 256]
    assert frame["log_r_over_m"].tolist()[-1] <= 0.03

def test_sieve_cache_reload_is_identical(tmp_path, cache_dir):
    assert main(["sieve", "--n", "10", "--out-dir", str(tmp_path), "-q"]) == EXIT_OK
    assert SieveCache.get_cache_exists(10, cache_dir)
    reloaded = SieveCache.import_table(SieveCache.get_file_name(10, cache_dir))
    assert reloaded.mu_slice(1, 11).tolist() == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert np.array_equal(reloaded.mu_slice(), sieve(10).mu_slice())
