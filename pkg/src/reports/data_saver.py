"""
Data Saver - Saves run reports as JSON plus a CSV summary for review
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Optional

import pandas as pd

from ..config import get_setting
from ..utils.logger import get_logger
from .formatter import round_floats
from .run_report import RunReport


class DataSaver:
    """Writes each run into a timestamped JSON report and per-table CSV files"""

    def __init__(self, base_dir: Optional[str] = None):
        self.logger = get_logger("DataSaver")
        self.base_dir = Path(base_dir if base_dir is not None
                             else get_setting('output', 'reports_path', 'reports'))
        self.base_dir.mkdir(parents=True, exist_ok=True)
        self.digits = int(get_setting('output', 'significant_digits', 12))

    def save_run_report(self, report: RunReport) -> str:
        """
        Save the full report (timing included) and one CSV per table

        Returns:
            Path of the JSON file
        """
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        stem = f"{report.command}_{timestamp}"
        filepath = self.base_dir / f"{stem}.json"

        data = round_floats(report.public_dict(include_timing=True), self.digits)
        data['saved_at'] = datetime.now().isoformat()
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
        self.logger.info(f"Saved run report to {filepath}")

        for name, rows in report.tables.items():
            if not rows:
                continue
            csv_filepath = self.base_dir / f"{stem}_{name}.csv"
            df = pd.DataFrame(round_floats(rows, self.digits))
            df.to_csv(csv_filepath, index=False)
            self.logger.info(f"Saved {name} summary CSV to {csv_filepath}")

        return str(filepath)
