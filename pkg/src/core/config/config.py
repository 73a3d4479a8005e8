"""
Centralized configuration management for cat0-collapse.
Loads settings from the unified YAML config file.

Usage:
    from src.core.config import get_config

    config = get_config()

    # Access via properties
    print(config.samples)
    print(config.oracle_resolution)

    # Access nested settings
    print(config.get('tolerances.planar'))

Environment Selection:
    Set CAT0_ENV environment variable:
    - CAT0_ENV=default    (desk-scale runs)
    - CAT0_ENV=thorough   (dense seeding, large sample counts)

    CAT0_CONFIG=/path/to/file.yaml replaces config/config.yaml.
    CAT0_WORKERS=N overrides sampling.workers.
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..exceptions import ConfigurationError

PROJECT_ROOT = Path(__file__).parent.parent.parent.parent


def _deep_merge(base: Dict, override: Dict) -> Dict:
    """Deep merge override dict into base dict."""
    result = base.copy()
    for key, value in override.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = _deep_merge(result[key], value)
        else:
            result[key] = value
    return result


# Values used when a profile leaves a key out.
DEFAULTS: Dict[str, Any] = {
    'tolerances': {
        'planar': 1e-12,
        'spatial': 1e-10,
        'barycentric': 1e-12,
        'check': 1e-7,
        'property_a_equality': 1e-7,
        'alternating': 1e-11,
        'coordinate': 1e-9,
        'coincidence': 1e-9,
        'angle': 1e-9,
        'equality': 1e-10,
        'witness': 1e-12,
    },
    'sampling': {
        'samples': 1000,
        'seed': 0,
        'comparison_grid': 3,
        'max_attempts': 40,
        'workers': 1,
    },
    'geodesics': {
        'edge_resolution': 6,
        'face_resolution': 5,
        'oracle_resolution': 200,
        'bisection_iterations': 50,
        'max_alternations': 2000,
        'midpoint_scan': 64,
        'angle_halvings': 12,
    },
    'engine': {
        'strategy': 'prefer_3_simplices',
        'verify_each_step': True,
        'verify_spine': False,
    },
    'logging': {
        'level': 'WARNING',
        'format': '%(asctime)s - [%(name)s] - %(levelname)s - %(message)s',
        'files': {},
    },
}


class Config:
    """Configuration manager for cat0-collapse.

    Loads the unified config.yaml with multiple profiles.
    Active profile selected by 'environment' field or CAT0_ENV var.
    """

    _instance = None
    _config = None
    _active_profile = None

    def __new__(cls, config_path: Optional[str] = None):
        """Singleton pattern."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._load_config(config_path)
        return cls._instance

    def _load_config(self, config_path: Optional[str] = None):
        """Load configuration from YAML file."""
        if config_path is None:
            config_path = os.environ.get('CAT0_CONFIG') or PROJECT_ROOT / "config" / "config.yaml"

        self._config_path = Path(config_path)

        if not self._config_path.exists():
            raise ConfigurationError(f"Config file not found: {config_path}")

        with open(self._config_path, 'r', encoding='utf-8') as f:
            try:
                raw_config = yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigurationError(f"Config file is not valid YAML: {exc}") from exc

        env_from_file = raw_config.get('environment', 'default')
        env_from_env = os.environ.get('CAT0_ENV')
        self._active_profile = env_from_env or env_from_file

        profiles = raw_config.get('profiles', {})

        if self._active_profile not in profiles:
            available = list(profiles.keys())
            raise ConfigurationError(
                f"Unknown environment '{self._active_profile}'. "
                f"Available: {available}. "
                f"Set CAT0_ENV or edit config.yaml",
                config_key='environment',
            )

        self._config = _deep_merge(DEFAULTS, profiles[self._active_profile] or {})

        self._config['_meta'] = {
            'config_file': str(self._config_path),
            'environment': self._active_profile,
            'description': self._config.get('description', ''),
        }

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get configuration value by dot-notation path.

        Args:
            key_path: Dot-separated path (e.g., 'tolerances.planar')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key_path.split('.')
        value = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    # =======================================================================
    # Common Properties
    # =======================================================================

    @property
    def environment(self) -> str:
        """Current environment name."""
        return self._active_profile

    # Sampling
    @property
    def samples(self) -> int:
        return int(self.get('sampling.samples', 1000))

    @property
    def seed(self) -> int:
        return int(self.get('sampling.seed', 0))

    @property
    def comparison_grid(self) -> int:
        return int(self.get('sampling.comparison_grid', 3))

    @property
    def max_attempts(self) -> int:
        return int(self.get('sampling.max_attempts', 40))

    @property
    def workers(self) -> int:
        """Worker count; CAT0_WORKERS wins over the profile."""
        override = os.environ.get('CAT0_WORKERS')
        if override:
            try:
                return max(1, int(override))
            except ValueError as exc:
                raise ConfigurationError(
                    f"CAT0_WORKERS must be an integer, got {override!r}",
                    config_key='CAT0_WORKERS',
                ) from exc
        return max(1, int(self.get('sampling.workers', 1)))

    # Geodesics
    @property
    def edge_resolution(self) -> int:
        return int(self.get('geodesics.edge_resolution', 6))

    @property
    def face_resolution(self) -> int:
        return int(self.get('geodesics.face_resolution', 5))

    @property
    def oracle_resolution(self) -> int:
        return int(self.get('geodesics.oracle_resolution', 200))

    @property
    def bisection_iterations(self) -> int:
        return int(self.get('geodesics.bisection_iterations', 50))

    @property
    def max_alternations(self) -> int:
        return int(self.get('geodesics.max_alternations', 2000))

    @property
    def midpoint_scan(self) -> int:
        return int(self.get('geodesics.midpoint_scan', 64))

    @property
    def angle_halvings(self) -> int:
        return int(self.get('geodesics.angle_halvings', 12))

    # Engine
    @property
    def strategy(self) -> str:
        return self.get('engine.strategy', 'prefer_3_simplices')

    @property
    def verify_each_step(self) -> bool:
        return bool(self.get('engine.verify_each_step', True))

    @property
    def verify_spine(self) -> bool:
        return bool(self.get('engine.verify_spine', False))

    # Logging
    @property
    def log_level(self) -> str:
        return self.get('logging.level', 'WARNING')

    def log_file(self, name: str) -> Optional[str]:
        """Get log file path for a component, or None when file logging is off."""
        path = self.get(f'logging.files.{name}')
        if path:
            return self._resolve_path(path)
        return None

    # Helper methods
    def _resolve_path(self, path: str) -> str:
        """Resolve a path to absolute."""
        path_obj = Path(path)
        if not path_obj.is_absolute():
            path_obj = PROJECT_ROOT / path_obj
        return str(path_obj)

    @property
    def config_file(self) -> str:
        """Path to loaded config file."""
        return str(self._config_path)


@dataclass(frozen=True)
class Tolerances:
    """Every numeric tolerance of the library, in one record."""

    planar: float = 1e-12
    spatial: float = 1e-10
    barycentric: float = 1e-12
    check: float = 1e-7
    property_a_equality: float = 1e-7
    alternating: float = 1e-11
    coordinate: float = 1e-9       # slack on barycentric input and on path joins
    coincidence: float = 1e-9      # points closer than this are the same point
    angle: float = 1e-9            # angle sums compared against π
    equality: float = 1e-10        # equalities of the split-triangle comparison
    witness: float = 1e-12         # tie witnesses, relative to the neighborhood diameter

    @classmethod
    def from_config(cls, config: Optional[Config] = None) -> 'Tolerances':
        """Build the record from the active profile's `tolerances` section."""
        config = config or get_config()
        section = config.get('tolerances', {}) or {}
        values = {}
        for name in cls.__dataclass_fields__:
            if name in section:
                value = float(section[name])
                if value < 0:
                    raise ConfigurationError(
                        f"Tolerance '{name}' must be non-negative",
                        config_key=f'tolerances.{name}',
                    )
                values[name] = value
        return cls(**values)

    def with_check(self, check: float) -> 'Tolerances':
        """Copy with a different CAT(0) inequality tolerance (the CLI --tol flag)."""
        return replace(self, check=check)


# Global config instance
_config_instance = None
_tolerances_instance: Optional[Tolerances] = None


def get_config(config_path: Optional[str] = None) -> Config:
    """
    Get the global configuration instance.

    Args:
        config_path: Optional path to config file (only used on first call)

    Returns:
        Config instance
    """
    global _config_instance
    if _config_instance is None:
        _config_instance = Config(config_path)
    return _config_instance


def get_tolerances() -> Tolerances:
    """Tolerances of the active profile, built once per configuration."""
    global _tolerances_instance
    if _tolerances_instance is None:
        _tolerances_instance = Tolerances.from_config(get_config())
    return _tolerances_instance


def reset_config():
    """Drop the cached instances so the next get_config() reads the environment again."""
    global _config_instance, _tolerances_instance
    _config_instance = None
    _tolerances_instance = None
    Config._instance = None

