"""This module config.py contains the public function read_config which parses configuration files for the troplin command line."""


import configparser
import os
from pathlib import Path

SEED_VARIABLE = "TROPLIN_SEED"
FORMATS = ("json", "newick")
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigError(ValueError):
    """Indicate an unreadable or invalid configuration file or environment setting."""

    pass


def _get_several_input(config, sect, opt, i=False):
    var = config.get(sect, opt)
    var = var.replace(", ", ",")
    var = var.split(",")
    if i:
        var = list(map(int, var))
    return var


def default_seed() -> int:
    """
    Seed from the environment variable TROPLIN_SEED, 0 when unset.

    Raises
    ----------
    ConfigError
        If the variable is set to something other than an integer.
    """
    value = os.environ.get(SEED_VARIABLE, "").strip()
    if not value:
        return 0
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{SEED_VARIABLE}={value!r} is not an integer seed")


def default_config() -> dict:
    return {
        "gen": {
            "low": "-20",
            "high": "-10",
            "seed": default_seed(),
            "denominator": 1,
            "retries": 100,
        },
        "line": {"cols": [1, 2], "format": "json", "verify": False},
        "logging": {"level": "WARNING"},
    }


def read_config(config_path=None):
    """
    Parse a configuration file for the troplin command line.

    Missing options keep their defaults: [gen] low = -20, high = -10, seed = $TROPLIN_SEED or 0,
    denominator = 1, retries = 100; [line] cols = 1, 2, format = json, verify = false;
    [logging] level = WARNING. Bounds stay strings so they can be read exactly later.

    Parameters
    ---------
    config_path: Path or str, optional
        Path of the configuration file. Without it the defaults are returned.

    Returns
    ---------
    dict
        One dict per section: "gen", "line" and "logging".

    Raises
    ---------
    ConfigError
        If the file does not exist, cannot be parsed or holds an invalid value.
    """
    cfg = default_config()
    if config_path is None:
        return cfg

    # Check if config_path is a file
    configPath = Path(config_path)
    if not configPath.is_file():
        raise ConfigError(f"{config_path} is not a file")

    config = configparser.ConfigParser(inline_comment_prefixes="#")
    try:
        config.read(configPath)
    except configparser.Error as error:
        raise ConfigError(f"Please provide a valid config file: {error}")

    try:
        # Read information regarding generation
        gen = cfg["gen"]
        if config.has_option("gen", "low"):
            gen["low"] = config.get("gen", "low")
        if config.has_option("gen", "high"):
            gen["high"] = config.get("gen", "high")
        if config.has_option("gen", "seed"):
            gen["seed"] = config.getint("gen", "seed")
        if config.has_option("gen", "denominator"):
            gen["denominator"] = config.getint("gen", "denominator")
        if config.has_option("gen", "retries"):
            gen["retries"] = config.getint("gen", "retries")

        # Read information regarding lines
        line = cfg["line"]
        if config.has_option("line", "cols"):
            line["cols"] = _get_several_input(config, "line", "cols", i=True)
        if config.has_option("line", "format"):
            line["format"] = config.get("line", "format").lower()
        if config.has_option("line", "verify"):
            line["verify"] = config.getboolean("line", "verify")

        if config.has_option("logging", "level"):
            cfg["logging"]["level"] = config.get("logging", "level").upper()
    except ValueError as error:
        raise ConfigError(f"{config_path}: {error}")

    if len(cfg["line"]["cols"]) != 2:
        raise ConfigError(f"{config_path}: [line] cols needs two column labels")
    if cfg["line"]["format"] not in FORMATS:
        raise ConfigError(f"{config_path}: [line] format must be one of {', '.join(FORMATS)}")
    if cfg["logging"]["level"] not in LEVELS:
        raise ConfigError(f"{config_path}: [logging] level must be one of {', '.join(LEVELS)}")
    return cfg
