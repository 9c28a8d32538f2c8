"""Orlicz space norms, conditional expectations and weighted conditional type operators."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import (
    DEFAULT_SEED,
    __version__,
    _fixture,
    _run,
    fixture_names,
)


def run(config, seed=None, strict=False, output_dir=None):
    """Run an experiment config (dict or JSON text). Returns (exit_code, report)."""
    text = config if isinstance(config, str) else _json.dumps(config)
    code, report = _run(text, seed=seed, strict=strict,
                        output_dir=None if output_dir is None else str(output_dir))
    return code, _json.loads(report)


def fixture(name):
    """A built-in experiment config as a dict."""
    return _json.loads(_fixture(name))
