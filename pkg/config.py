import yaml
import os
import os.path
import logging

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = os.path.join(os.path.dirname(os.path.abspath(__file__)), "config.yml.default")


class ConfigError(Exception):
    pass


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_count(value):
    return isinstance(value, int) and not isinstance(value, bool) and value > 0


def resolve_config_path(config_file=None):
    """The file to read: the one asked for, else ./config.yml, else the shipped defaults."""
    if config_file:
        return config_file
    if os.path.isfile("./config.yml"):
        return "./config.yml"
    return DEFAULT_CONFIG


def load_config(config_file=None):
    path = resolve_config_path(config_file)
    try:
        with open(path) as stream:
            try:
                CONFIG = yaml.safe_load(stream)
            except yaml.YAMLError as e:
                logger.error("There appears to be a syntax problem with your config file `{}`".format(path))
                raise ConfigError("Could not parse `{}`: {}".format(path, e))
    except OSError as e:
        raise ConfigError("Could not open the config file `{}`: {}".format(path, e))

    if not isinstance(CONFIG, dict):
        raise ConfigError("Your config file `{}` must be a dictionary of sections.".format(path))

    # [section, type, error message]
    sections = [["enumeration", dict, "Section `enumeration` must be a dictionary with indented keys."],
                ["quasismooth", dict, "Section `quasismooth` must be a dictionary with indented keys."],
                ["stabilizer", dict, "Section `stabilizer` must be a dictionary with indented keys."],
                ["dataset", dict, "Section `dataset` must be a dictionary with indented keys."]]
    for section in sections:
        if section[0] not in CONFIG:
            raise ConfigError("Your config file does not have required section `{}`.".format(section[0]))
        elif not isinstance(CONFIG[section[0]], section[1]):
            raise ConfigError(section[2])

    # [section, key, check, error message]
    subsections = [["enumeration", "max_weight", _is_count, "`max_weight` must be a positive integer."],
                   ["enumeration", "max_degree", _is_count, "`max_degree` must be a positive integer."],
                   ["enumeration", "processes", _is_count, "`processes` must be a positive integer."],
                   ["quasismooth", "seed", lambda v: isinstance(v, int) and not isinstance(v, bool),
                    "`seed` must be an integer."],
                   ["quasismooth", "primes", _is_count, "`primes` must be a positive integer."],
                   ["quasismooth", "prime_bits", lambda v: _is_count(v) and v >= 8,
                    "`prime_bits` must be an integer of at least 8."],
                   ["stabilizer", "epsilon", lambda v: _is_number(v) and 0 < v < 1,
                    "`epsilon` must be a number between 0 and 1, written like 1.0e-9."],
                   ["stabilizer", "precision", _is_count, "`precision` must be a positive number of digits."],
                   ["dataset", "path", lambda v: isinstance(v, str) and v != "",
                    "`path` must be a string wrapped in quotes."]]
    for section, key, check, message in subsections:
        if key not in CONFIG[section]:
            raise ConfigError("Your config file does not have required `{}` subsection `{}`.".format(section, key))
        if not check(CONFIG[section][key]):
            raise ConfigError("`{}` subsection {}".format(section, message))

    dataset = CONFIG["dataset"]["path"]
    if not os.path.isabs(dataset):
        dataset = os.path.join(os.path.dirname(os.path.abspath(path)), dataset)
    if not os.path.isfile(dataset):
        raise ConfigError("The dataset `{}` does not exist.".format(dataset))
    CONFIG["dataset"]["path"] = dataset

    logger.debug("Loaded configuration from {}".format(path))
    return CONFIG
