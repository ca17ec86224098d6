#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Configuration Manager
Fractal Spectra Toolkit
"""

import copy
import json
import os
from typing import Dict, Any, Optional
from dotenv import load_dotenv
from loguru import logger

# Переменные окружения, перекрывающие ключи файла: (ключ, преобразователь)
ENV_OVERRIDES = {
    "SPECTRA_LOG_LEVEL": ("logging.level", str),
    "SPECTRA_LOG_FILE": ("logging.file", str),
    "SPECTRA_TOL": ("solver.rel_tol", float),
    "SPECTRA_MAX_ATOMS": ("solver.max_atoms", int),
}

DEFAULT_CONFIG: Dict[str, Any] = {
    "solver": {
        "rel_tol": 1e-10,
        "max_atoms": 2 ** 24,
        "pivot_floor": 1e-300,
        "perturb_retries": 3,
        "inverse_iterations": 5
    },
    "sigma": {
        "level_margin": 3,
        "grid": 2001
    },
    "export": {
        "float_format": "%.17g"
    },
    "logging": {
        "level": "INFO",
        "file": None
    }
}


class ConfigManager:
    """Менеджер конфигурации вычислений"""

    def __init__(self, config_path: Optional[str] = None, use_env: bool = True):
        """
        Инициализация менеджера конфигурации

        Args:
            config_path: Путь к файлу конфигурации
            use_env: Применять ли перекрытия из переменных окружения (.env)
        """
        if config_path is None:
            # Определяем путь к конфигурации относительно корня проекта
            current_dir = os.path.dirname(os.path.dirname(os.path.dirname(__file__)))
            config_path = os.path.join(current_dir, 'config', 'spectra_config.json')

        self.config_path = config_path
        self.use_env = use_env
        self.config: Dict[str, Any] = {}
        self.load_config()

    def load_config(self) -> None:
        """Загрузка конфигурации из файла"""
        self.config = self._get_default_config()
        try:
            if os.path.exists(self.config_path):
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    self._merge(self.config, json.load(f))
                logger.debug(f"Конфигурация загружена из {self.config_path}")
            else:
                logger.warning(f"Файл конфигурации не найден: {self.config_path}")
        except Exception as e:
            logger.error(f"Ошибка загрузки конфигурации: {e}")
            self.config = self._get_default_config()

        if self.use_env:
            self._apply_env_overrides()

    def _get_default_config(self) -> Dict[str, Any]:
        """Получение конфигурации по умолчанию"""
        return copy.deepcopy(DEFAULT_CONFIG)

    def _merge(self, target: Dict[str, Any], source: Dict[str, Any]) -> None:
        """Рекурсивное слияние секций файла с умолчаниями"""
        for key, value in source.items():
            if isinstance(value, dict) and isinstance(target.get(key), dict):
                self._merge(target[key], value)
            else:
                target[key] = value

    def _apply_env_overrides(self) -> None:
        """Перекрытие ключей переменными окружения"""
        load_dotenv()
        for env_name, (key, cast) in ENV_OVERRIDES.items():
            raw = os.environ.get(env_name)
            if raw is None or raw == "":
                continue
            try:
                self.set(key, cast(raw))
                logger.debug(f"{key} перекрыт из {env_name}")
            except ValueError:
                logger.warning(f"Некорректное значение {env_name}={raw!r}, оставлено {self.get(key)}")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Получение значения конфигурации

        Args:
            key: Ключ конфигурации (поддерживает вложенные ключи через точку)
            default: Значение по умолчанию

        Returns:
            Значение конфигурации или значение по умолчанию
        """
        keys = key.split('.')
        value = self.config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """
        Установка значения конфигурации

        Args:
            key: Ключ конфигурации (поддерживает вложенные ключи через точку)
            value: Значение для установки
        """
        keys = key.split('.')
        config = self.config

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def save_config(self) -> bool:
        """
        Сохранение конфигурации в файл

        Returns:
            True если сохранение успешно, False в противном случае
        """
        try:
            config_dir = os.path.dirname(self.config_path)
            if config_dir:
                os.makedirs(config_dir, exist_ok=True)

            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2, ensure_ascii=False)

            logger.info(f"Конфигурация сохранена в {self.config_path}")
            return True
        except Exception as e:
            logger.error(f"Ошибка сохранения конфигурации: {e}")
            return False

    def reload_config(self) -> None:
        """Перезагрузка конфигурации из файла"""
        self.load_config()

    def get_solver_config(self) -> Dict[str, Any]:
        """Параметры спектрального решателя"""
        return self.get('solver', {})

    def get_sigma_config(self) -> Dict[str, Any]:
        """Параметры построения σ_k"""
        return self.get('sigma', {})

    def get_export_config(self) -> Dict[str, Any]:
        """Параметры экспорта"""
        return self.get('export', {})

    def get_logging_config(self) -> Dict[str, Any]:
        """Получение конфигурации логирования"""
        return self.get('logging', {})

    def get_config(self) -> Dict[str, Any]:
        """Получение всей конфигурации"""
        return self.config
