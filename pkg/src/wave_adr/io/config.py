"""
Problem configuration files.

Two layouts are accepted: ``key=value`` text with dotted keys for nested
models (``fgmres.restart=20``), values read as YAML scalars or flow
sequences, and plain YAML mappings for files ending in ``.yaml``/``.yml``.
Tuned alphas are stored in the key=value layout (``wave_adr.alphas.2=4.6``).
"""

from pathlib import Path
from typing import Any, Optional, Union

import yaml
from pydantic import ValidationError
from structlog import get_logger

from wave_adr.core.errors import ConfigError
from wave_adr.core.schemas.config import ProblemSpec

logger = get_logger(__name__)

ALPHA_PREFIX = "wave_adr.alphas."
YAML_SUFFIXES = {".yaml", ".yml"}


def _set_dotted(target: dict, key: str, value: Any, lineno: int) -> None:
    parts = key.split(".")
    node = target
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"line {lineno}: '{key}' nests under a scalar key")
        node = child
    if isinstance(node.get(parts[-1]), dict):
        raise ConfigError(f"line {lineno}: '{key}' would overwrite a section")
    node[parts[-1]] = value


def parse_key_values(text: str) -> dict[str, Any]:
    """Nested dict from ``key=value`` lines; ``#`` starts a comment line."""
    data: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, raw = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected key=value, got '{line}'")
        try:
            value = yaml.safe_load(raw.strip()) if raw.strip() else None
        except yaml.YAMLError as e:
            raise ConfigError(f"line {lineno}: cannot parse value '{raw.strip()}'") from e
        _set_dotted(data, key, value, lineno)
    return data


def _read_mapping(path: Path) -> dict[str, Any]:
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"Cannot read config '{path}': {e}") from e
    if path.suffix.lower() in YAML_SUFFIXES:
        try:
            data = yaml.safe_load(text) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"'{path}' is not valid YAML: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"'{path}' must hold a mapping at the top level")
        return data
    return parse_key_values(text)


def spec_from_mapping(
    data: dict[str, Any], base_dir: Union[str, Path, None] = None
) -> ProblemSpec:
    """Validate a mapping; relative slowness paths resolve against ``base_dir``."""
    data = dict(data)
    slowness = data.get("slowness")
    if base_dir is not None and isinstance(slowness, str):
        candidate = Path(slowness)
        if not candidate.is_absolute() and (Path(base_dir) / candidate).exists():
            data["slowness"] = str(Path(base_dir) / candidate)
    try:
        return ProblemSpec.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"Invalid problem configuration:\n{e}") from e


def load_spec(path: Union[str, Path]) -> ProblemSpec:
    """
    Read a ProblemSpec from disk.

    Raises:
        ConfigError: unreadable file, malformed line or failed validation
    """
    path = Path(path)
    data = _read_mapping(path)
    data.setdefault("name", path.stem)
    spec = spec_from_mapping(data, base_dir=path.parent)
    logger.info("config_loaded", path=str(path), method=spec.method, omega=spec.omega)
    return spec


def save_alphas(
    alphas: dict[int, float], path: Union[str, Path], loss: Optional[float] = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    if loss is not None:
        lines.append(f"# tuned loss {loss:.6e}")
    lines += [f"{ALPHA_PREFIX}{level}={float(alphas[level])!r}" for level in sorted(alphas)]
    path.write_text("\n".join(lines) + "\n")
    logger.info("alphas_saved", path=str(path), levels=sorted(alphas))
    return path


def load_alphas(path: Union[str, Path]) -> dict[int, float]:
    """Per-level alphas from a file written by ``save_alphas``."""
    path = Path(path)
    data = _read_mapping(path)
    extra = set(data) - {"wave_adr"} or set(data.get("wave_adr", {})) - {"alphas"}
    if extra:
        raise ConfigError(f"'{path}' holds keys other than {ALPHA_PREFIX}*: {sorted(extra)}")
    raw = data.get("wave_adr", {}).get("alphas", {})
    try:
        alphas = {int(level): float(alpha) for level, alpha in raw.items()}
    except (TypeError, ValueError) as e:
        raise ConfigError(f"'{path}' has a malformed alpha entry: {e}") from e
    bad = {lvl: a for lvl, a in alphas.items() if not a > 1.0}
    if bad:
        raise ConfigError(f"alphas must exceed 1, got {bad}")
    return alphas
