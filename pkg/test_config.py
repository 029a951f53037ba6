import os

import pytest

from config import DEFAULT_CONFIG, ConfigError, load_config, resolve_config_path
from famenum import DATASET_PATH

VALID = """
enumeration:
  max_weight: 20
  max_degree: 50
  processes: 2
quasismooth:
  seed: 7
  primes: 3
  prime_bits: 31
stabilizer:
  epsilon: 1.0e-9
  precision: 60
dataset:
  path: "{}"
"""


def write_config(tmp_path, text):
    path = tmp_path / "config.yml"
    path.write_text(text)
    return str(path)


def test_shipped_defaults():
    config = load_config(DEFAULT_CONFIG)
    assert config["enumeration"] == {"max_weight": 35, "max_degree": 100, "processes": 1}
    assert config["quasismooth"]["seed"] == 20240601
    assert config["stabilizer"] == {"epsilon": 1e-9, "precision": 60}
    assert os.path.samefile(config["dataset"]["path"], DATASET_PATH)


def test_explicit_path_wins():
    assert resolve_config_path("mine.yml") == "mine.yml"


def test_custom_config(tmp_path):
    config = load_config(write_config(tmp_path, VALID.format(DATASET_PATH)))
    assert config["enumeration"]["processes"] == 2
    assert config["quasismooth"]["primes"] == 3


def test_relative_dataset_is_read_next_to_the_config(tmp_path):
    (tmp_path / "data.json").write_text("{}")
    config = load_config(write_config(tmp_path, VALID.format("data.json")))
    assert config["dataset"]["path"] == str(tmp_path / "data.json")


@pytest.mark.parametrize("old,new", [("dataset:", "data:"),
                                     ("  seed: 7", "  seed: seven"),
                                     ("  epsilon: 1.0e-9", "  epsilon: 1e-9"),
                                     ("  processes: 2", "  processes: 0"),
                                     ("  prime_bits: 31", "  prime_bits: 4"),
                                     ("  primes: 3\n", "")])
def test_invalid_config(tmp_path, old, new):
    text = VALID.format(DATASET_PATH)
    assert old in text
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, text.replace(old, new)))


def test_missing_dataset(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, VALID.format("nowhere.json")))


def test_syntax_error(tmp_path):
    with pytest.raises(ConfigError):
        load_config(write_config(tmp_path, "enumeration: [max_weight: 3"))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.yml"))
