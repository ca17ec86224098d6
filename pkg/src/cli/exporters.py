#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Атомарная запись результатов (временный файл + rename)
"""

import json
import os
import tempfile
from typing import Any, Dict

import pandas as pd
from loguru import logger

from src.core.errors import DomainError

FLOAT_FORMAT = "%.17g"


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp_", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_csv(frame: pd.DataFrame, path: str, float_format: str = FLOAT_FORMAT) -> None:
    """CSV с заголовком, LF и 17 значащими цифрами"""
    text = frame.to_csv(index=False, float_format=float_format, lineterminator="\n")
    _atomic_write(path, text)
    logger.info(f"💾 Записано {len(frame)} строк в {path}")


def write_json(payload: Dict[str, Any], path: str) -> None:
    """JSON UTF-8 с порядком ключей как в payload"""
    text = json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=False) + "\n"
    _atomic_write(path, text)
    logger.info(f"💾 Записан JSON в {path}")


def read_samples_csv(path: str) -> pd.DataFrame:
    """Чтение отсчётов x,f"""
    frame = pd.read_csv(path)
    missing = {"x", "f"} - set(frame.columns)
    if missing:
        raise DomainError(f"во входном файле нет столбцов: {', '.join(sorted(missing))}")
    return frame
