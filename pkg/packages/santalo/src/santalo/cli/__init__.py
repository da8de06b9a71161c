"""The ``santalo`` command line: settings, verification suites and artifacts."""

from santalo.cli.artifacts import ArtifactWriter, CheckRecord, RunManifest
from santalo.cli.main import EXIT_FAIL, EXIT_NUMERICAL, EXIT_PASS, EXIT_USAGE, build_parser, main
from santalo.cli.settings import RunSettings, load_settings, read_config_file
from santalo.cli.suites import BUDGETS, SUITES, SuiteContext

__all__ = [
    "main",
    "build_parser",
    "EXIT_PASS",
    "EXIT_FAIL",
    "EXIT_USAGE",
    "EXIT_NUMERICAL",
    "RunSettings",
    "load_settings",
    "read_config_file",
    "ArtifactWriter",
    "CheckRecord",
    "RunManifest",
    "SuiteContext",
    "SUITES",
    "BUDGETS",
]
