import re
import typing
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from ..errors import ConfigError
from .schema import SECTIONS, RunConfig


class ConfigYamlLoader(yaml.SafeLoader):
    """SafeLoader that also reads 1e-3 and 1e3 as floats"""


ConfigYamlLoader.add_implicit_resolver(
    'tag:yaml.org,2002:float',
    re.compile(r'^[-+]?[0-9][0-9_]*(?:\.[0-9_]*)?[eE][-+]?[0-9]+$'),
    list('-+0123456789'),
)


def _line_map(node: yaml.Node, prefix: str = '') -> Dict[str, int]:
    """Dotted key -> 1-based line of the key in the source"""
    lines: Dict[str, int] = {}
    if isinstance(node, yaml.MappingNode):
        for key_node, value_node in node.value:
            key = f"{prefix}{key_node.value}"
            lines[key] = key_node.start_mark.line + 1
            lines.update(_line_map(value_node, key + '.'))
    return lines


def _coerce(value: Any, hint: Any, key: str, line: Optional[int]) -> Any:
    """Check ``value`` against a field annotation, converting ints to floats"""
    origin = typing.get_origin(hint)
    if origin is Union:
        args = [a for a in typing.get_args(hint) if a is not type(None)]
        if value is None:
            return None
        return _coerce(value, args[0], key, line)
    if origin in (list, List):
        if not isinstance(value, list):
            raise ConfigError(f"expected a list, got {value!r}", key=key, line=line)
        (item_hint,) = typing.get_args(hint) or (Any,)
        return [_coerce(v, item_hint, key, line) for v in value]
    if origin in (dict, Dict):
        if not isinstance(value, dict):
            raise ConfigError(f"expected a mapping, got {value!r}", key=key, line=line)
        return dict(value)
    if hint is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"expected true or false, got {value!r}", key=key, line=line)
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
            raise ConfigError(f"expected an integer, got {value!r}", key=key, line=line)
        return int(value)
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"expected a number, got {value!r}", key=key, line=line)
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", key=key, line=line)
        return value
    return value


def _build_section(cls, data: Any, name: str, lines: Dict[str, int]):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError("section must be a mapping", key=name, line=lines.get(name))
    hints = typing.get_type_hints(cls)
    known = {f.name for f in fields(cls)}
    values = {}
    for key, value in data.items():
        dotted = f"{name}.{key}"
        if key not in known:
            raise ConfigError(f"unknown key (expected one of {sorted(known)})",
                              key=dotted, line=lines.get(dotted))
        values[key] = _coerce(value, hints[key], dotted, lines.get(dotted))
    return cls(**values)


def parse_config_text(text: str, source: str = '<string>') -> RunConfig:
    """Parse and validate a YAML run configuration"""
    try:
        node = yaml.compose(text, Loader=ConfigYamlLoader)
        data = yaml.load(text, Loader=ConfigYamlLoader)
    except yaml.MarkedYAMLError as e:
        line = e.problem_mark.line + 1 if e.problem_mark is not None else None
        raise ConfigError(f"{source}: {e.problem}", line=line) from e
    if not data:
        raise ConfigError(f"Empty or invalid YAML config: {source}")
    if not isinstance(data, dict):
        raise ConfigError(f"Config must be a mapping: {source}", line=1)

    lines = _line_map(node)
    top = {}
    for key, value in data.items():
        if key in SECTIONS:
            top[key] = _build_section(SECTIONS[key], value, key, lines)
        elif key == 'experiment':
            top[key] = _coerce(value, str, key, lines.get(key))
        elif key == 'seed':
            top[key] = _coerce(value, int, key, lines.get(key))
        else:
            raise ConfigError(f"unknown key (expected experiment, seed or one of {sorted(SECTIONS)})",
                              key=key, line=lines.get(key))
    return RunConfig(lines=lines, **top).validate()


def dump_config(config: RunConfig) -> str:
    """Provenance copy of the resolved configuration"""
    return yaml.safe_dump(config.to_dict(), sort_keys=False, default_flow_style=None)


class ConfigLoader:
    """Loads run configurations from YAML files"""

    def __init__(self):
        self._cache: Dict[str, RunConfig] = {}
        # Point to project config directory
        self._config_path = Path(__file__).parent.parent.parent / "config" / "experiments"

    def load_from_yaml(self, file_path: Union[str, Path]) -> RunConfig:
        """Load and validate a run configuration file"""
        file_path = Path(file_path)

        if not file_path.exists():
            raise FileNotFoundError(f"Config file not found: {file_path}")

        cache_key = str(file_path.absolute())
        if cache_key in self._cache:
            return self._cache[cache_key]

        with open(file_path, 'r', encoding='utf-8') as f:
            config = parse_config_text(f.read(), source=str(file_path))

        self._cache[cache_key] = config
        return config

    def load_builtin_config(self, name: str) -> RunConfig:
        """Load a built-in experiment config by name"""
        config_file = self._config_path / f"{name}.yaml"

        if not config_file.exists():
            available = self.list_builtin_configs()
            raise ConfigError(f"Unknown builtin config '{name}'. Available: {available}")

        return self.load_from_yaml(config_file)

    def list_builtin_configs(self) -> List[str]:
        if not self._config_path.exists():
            return []
        return sorted(path.stem for path in self._config_path.glob("*.yaml"))

    def load(self, source: Union[str, Path]) -> RunConfig:
        """Path to a YAML file or the name of a built-in config"""
        if isinstance(source, str) and not ("/" in source or "\\" in source or source.endswith(('.yaml', '.yml'))):
            return self.load_builtin_config(source)
        return self.load_from_yaml(source)

    def clear_cache(self):
        self._cache.clear()


# Global loader instance
_loader = ConfigLoader()


def parse_config(source: Union[str, Path]) -> RunConfig:
    """Convenience function to load a config file or a built-in config"""
    return _loader.load(source)


def list_builtin_configs() -> List[str]:
    """Convenience function to list built-in configs"""
    return _loader.list_builtin_configs()
