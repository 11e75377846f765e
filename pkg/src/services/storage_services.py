"""
Storage Services Module

Writes run artifacts to disk: DOT sources of communication and witness
graphs, and JSON reports.
"""

import json
import logging
import os
from datetime import datetime
from typing import List, Sequence, Tuple

import graphviz

logger = logging.getLogger(__name__)


def safe_stem(name: str) -> str:
    """Filesystem-friendly version of a system or query name."""
    stem = "".join(c if c.isalnum() or c in ("-", "_") else "_" for c in name).strip("_").lower()
    if len(stem) > 50:
        stem = stem[:50].rstrip("_")
    return stem or "run"


def save_graphs(graphs: Sequence[Tuple[str, graphviz.Digraph]], output_dir: str) -> List[str]:
    """Write each graph's DOT source; only the text is produced, no rendering."""
    os.makedirs(output_dir, exist_ok=True)
    written = []
    for filename, dot in graphs:
        try:
            written.append(dot.save(filename=filename, directory=output_dir))
        except OSError as e:
            logger.error("Could not write %s to %s: %s", filename, output_dir, e)
            raise
    logger.info("Wrote %d DOT files to %s", len(written), output_dir)
    return written


def save_report(report: dict, output_dir: str, stem: str) -> str:
    os.makedirs(output_dir, exist_ok=True)
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    path = os.path.join(output_dir, f"{safe_stem(stem)}_{timestamp}_report.json")
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, ensure_ascii=False)
    except OSError as e:
        logger.error("Could not write report %s: %s", path, e)
        raise
    return path
