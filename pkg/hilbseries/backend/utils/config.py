"""
Configuration utilities

Created: 2024-11-04
"""
# backend/utils/config.py
import os
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Tuple
from dotenv import load_dotenv

ENGINE_VERSION = "0.1.0"


class ConfigurationError(Exception):
    pass


@dataclass(frozen=True)
class EngineSettings:
    max_weight: int = 8
    macdonald_max_weight: int = 6
    jobs: int = 1
    log_level: str = "WARNING"
    slopes: Tuple[Fraction, ...] = (
        Fraction(7, 13), Fraction(11, 17), Fraction(13, 19), Fraction(17, 23), Fraction(19, 29)
    )
    slope_method: str = "symbolic"
    h_cap: int = 2

    def with_overrides(self, **overrides) -> "EngineSettings":
        """Applique les options de la ligne de commande (prioritaires)"""
        values = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **values)


class ConfigManager:
    OPTIONAL_ENV_VARS = {
        'HILBSERIES_MAX_WEIGHT': 'Poids maximal des sommes sur les partitions',
        'HILBSERIES_MACDONALD_MAX_WEIGHT': 'Poids maximal des polynômes de Macdonald',
        'HILBSERIES_JOBS': 'Nombre de processus de calcul',
        'HILBSERIES_LOG_LEVEL': 'Niveau de log',
        'HILBSERIES_SLOPES': 'Pentes rationnelles des droites numériques',
        'HILBSERIES_SLOPE_METHOD': 'Méthode de pente (symbolic ou numeric)',
        'HILBSERIES_H_CAP': 'Borne de d1+d2 pour les composantes H',
    }

    LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
    SLOPE_METHODS = ("symbolic", "numeric")

    _settings: Optional[EngineSettings] = None

    @staticmethod
    def _parse_positive_int(var: str, raw: str, minimum: int = 1) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(f"{var} doit être un entier (reçu: {raw!r})")
        if value < minimum:
            raise ConfigurationError(f"{var} doit être supérieur ou égal à {minimum} (reçu: {value})")
        return value

    @staticmethod
    def parse_slopes(raw: str) -> Tuple[Fraction, ...]:
        slopes = []
        for chunk in raw.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            try:
                slope = Fraction(chunk)
            except ValueError:
                raise ConfigurationError(f"Pente invalide: {chunk!r}")
            if slope == 0:
                raise ConfigurationError("La pente 0 est dégénérée")
            slopes.append(slope)
        if len(slopes) < 2:
            raise ConfigurationError("Au moins deux pentes sont nécessaires pour les contrôles croisés")
        return tuple(slopes)

    @classmethod
    def validate_environment(cls, env_path: Optional[Path] = None) -> Dict[str, str]:
        """Lit le fichier .env optionnel et retourne les variables reconnues"""
        env_path = env_path or Path.cwd() / '.env'
        load_dotenv(env_path)

        env_vars = {}
        for var in cls.OPTIONAL_ENV_VARS:
            value = os.getenv(var)
            if value:
                env_vars[var] = value.strip()
        return env_vars

    @classmethod
    def load_settings(cls, env_path: Optional[Path] = None) -> EngineSettings:
        """Construit les réglages du moteur à partir de l'environnement"""
        env_vars = cls.validate_environment(env_path)
        settings = EngineSettings()
        overrides = {}

        if 'HILBSERIES_MAX_WEIGHT' in env_vars:
            overrides['max_weight'] = cls._parse_positive_int(
                'HILBSERIES_MAX_WEIGHT', env_vars['HILBSERIES_MAX_WEIGHT'])
        if 'HILBSERIES_MACDONALD_MAX_WEIGHT' in env_vars:
            overrides['macdonald_max_weight'] = cls._parse_positive_int(
                'HILBSERIES_MACDONALD_MAX_WEIGHT', env_vars['HILBSERIES_MACDONALD_MAX_WEIGHT'])
        if 'HILBSERIES_JOBS' in env_vars:
            overrides['jobs'] = cls._parse_positive_int('HILBSERIES_JOBS', env_vars['HILBSERIES_JOBS'])
        if 'HILBSERIES_H_CAP' in env_vars:
            overrides['h_cap'] = cls._parse_positive_int(
                'HILBSERIES_H_CAP', env_vars['HILBSERIES_H_CAP'], minimum=0)
        if 'HILBSERIES_LOG_LEVEL' in env_vars:
            level = env_vars['HILBSERIES_LOG_LEVEL'].upper()
            if level not in cls.LOG_LEVELS:
                raise ConfigurationError(
                    f"HILBSERIES_LOG_LEVEL invalide: {level} (attendu: {', '.join(cls.LOG_LEVELS)})")
            overrides['log_level'] = level
        if 'HILBSERIES_SLOPES' in env_vars:
            overrides['slopes'] = cls.parse_slopes(env_vars['HILBSERIES_SLOPES'])
        if 'HILBSERIES_SLOPE_METHOD' in env_vars:
            method = env_vars['HILBSERIES_SLOPE_METHOD'].lower()
            if method not in cls.SLOPE_METHODS:
                raise ConfigurationError(
                    f"HILBSERIES_SLOPE_METHOD invalide: {method} (attendu: symbolic ou numeric)")
            overrides['slope_method'] = method

        return settings.with_overrides(**overrides)

    @classmethod
    def setup_environment(cls) -> EngineSettings:
        """Configure l'environnement pour l'application"""
        try:
            cls._settings = cls.load_settings()
            return cls._settings
        except ConfigurationError as e:
            print(f"Erreur de configuration:\n{str(e)}", file=sys.stderr)
            sys.exit(1)
        except Exception as e:
            print(f"Erreur inattendue lors de la configuration:\n{str(e)}", file=sys.stderr)
            sys.exit(1)

    @classmethod
    def apply_overrides(cls, **overrides) -> EngineSettings:
        """Options de la ligne de commande, prioritaires sur l'environnement"""
        cls._settings = cls.settings().with_overrides(**overrides)
        return cls._settings

    @classmethod
    def settings(cls) -> EngineSettings:
        if cls._settings is None:
            cls._settings = cls.load_settings()
        return cls._settings
