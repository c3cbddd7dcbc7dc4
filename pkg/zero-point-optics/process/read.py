from pathlib import Path

from pydantic import TypeAdapter

ConfigValue = float | int | str | bool

_CONFIG = TypeAdapter(dict[str, ConfigValue])


def read_config(path: Path) -> dict[str, ConfigValue]:
    """Reads a flat JSON parameter file and returns it keyed by parameter name.

    Keys may be written as flags (`lambda-um`) or parameter names (`lambda_um`).
    """
    values = _CONFIG.validate_json(path.read_bytes())
    return {key.lstrip("-").replace("-", "_"): value for key, value in values.items()}
