import json
import os
import sys
from typing import List, Sequence

import numpy as np
import yaml
from pandas import DataFrame, read_csv

from src.exception import GeometryException
from src.logger import logging


# ------------------------------------------------------------
# YAML FILE UTILITIES
# ------------------------------------------------------------

def read_yaml_file(file_path: str) -> dict:
    """
    Reads a YAML configuration file and returns its contents as a dictionary.

    Args:
        file_path (str): Path to the YAML file.

    Returns:
        dict: Parsed YAML content.
    """
    try:
        with open(file_path, "rb") as yaml_file:
            return yaml.safe_load(yaml_file)

    except Exception as e:
        raise GeometryException(e, sys) from e


def write_yaml_file(file_path: str, content: object, replace: bool = False) -> None:
    """
    Writes content to a YAML file.

    Args:
        file_path (str): Path where YAML file should be saved.
        content (object): Data to be written into the YAML file.
        replace (bool): If True, replaces existing file.
    """
    try:
        if replace and os.path.exists(file_path):
            os.remove(file_path)

        _ensure_parent(file_path)

        with open(file_path, "w") as file:
            yaml.dump(content, file)

    except Exception as e:
        raise GeometryException(e, sys) from e


# ------------------------------------------------------------
# JSON FILE UTILITIES
# ------------------------------------------------------------

def _to_builtin(obj):
    """json.dump hook for numpy scalars and arrays."""
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def read_json_file(file_path: str) -> dict:
    """
    Reads a JSON document (scenes, summaries).

    Args:
        file_path (str): Path to the JSON file.

    Returns:
        dict: Parsed JSON content.
    """
    try:
        with open(file_path, "r", encoding="utf-8") as json_file:
            return json.load(json_file)

    except Exception as e:
        raise GeometryException(e, sys) from e


def write_json_file(file_path: str, content: object) -> None:
    """
    Writes content as indented JSON with sorted keys, so equal content gives equal bytes.

    Args:
        file_path (str): Destination path; parent directories are created.
        content (object): JSON-compatible object (numpy values allowed).
    """
    try:
        _ensure_parent(file_path)
        with open(file_path, "w", encoding="utf-8") as json_file:
            json.dump(content, json_file, indent=2, sort_keys=True, default=_to_builtin)
            json_file.write("\n")

    except Exception as e:
        raise GeometryException(e, sys) from e


# ------------------------------------------------------------
# CSV REPORT UTILITIES
# ------------------------------------------------------------

def write_records_csv(file_path: str, records: Sequence[dict], columns: List[str]) -> DataFrame:
    """
    Saves report rows as CSV with a fixed column order.

    Args:
        file_path (str): Destination path.
        records (Sequence[dict]): One dict per row.
        columns (List[str]): Header, also the column order.

    Returns:
        DataFrame: The frame that was written.
    """
    try:
        logging.info(f"Writing {len(records)} report rows to {file_path}")
        _ensure_parent(file_path)
        frame = DataFrame(list(records), columns=columns)
        frame.to_csv(file_path, index=False, float_format="%.17g", lineterminator="\n")
        return frame

    except Exception as e:
        raise GeometryException(e, sys) from e


def read_records_csv(file_path: str) -> DataFrame:
    """
    Loads a report written by ``write_records_csv``.

    Args:
        file_path (str): Path to the CSV file.

    Returns:
        DataFrame: Report rows.
    """
    try:
        return read_csv(file_path)

    except Exception as e:
        raise GeometryException(e, sys) from e


# ------------------------------------------------------------
# TEXT FILE UTILITIES
# ------------------------------------------------------------

def write_text_file(file_path: str, text: str) -> None:
    """
    Writes a text document (SVG figures) with unix newlines.

    Args:
        file_path (str): Destination path.
        text (str): Document content.
    """
    try:
        _ensure_parent(file_path)
        with open(file_path, "w", encoding="utf-8", newline="\n") as file:
            file.write(text)

    except Exception as e:
        raise GeometryException(e, sys) from e


def _ensure_parent(file_path: str) -> None:
    parent = os.path.dirname(file_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
