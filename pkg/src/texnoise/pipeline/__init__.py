"""Orchestration: configuration, manifests, synthetic corpus, the full
assessment run, report figures and the CLI."""

from .config import RunConfig, format_config, load_config, parse_config, save_config
from .manifest import CaseManifestEntry, read_manifest, write_manifest
from .run import run_assessment
from .synth import SyntheticSpec, generate_synthetic

__all__ = [
    "RunConfig", "format_config", "load_config", "parse_config", "save_config",
    "CaseManifestEntry", "read_manifest", "write_manifest",
    "run_assessment", "SyntheticSpec", "generate_synthetic",
]
