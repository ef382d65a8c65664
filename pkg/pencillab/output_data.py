#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains functions to render analysis reports and to save
eigenvalue trajectories and report tables.
"""

import json
import logging
import os
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd
import xarray as xr

from pencillab.logs import timer
from pencillab.numcore import Tolerances

MAX_SHEET_NAME = 31


def to_jsonable(value : Any) -> Any:
    """Convert report values to JSON types.

    Complex numbers become ``[re, im]`` pairs, fractions strings and arrays
    nested lists.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Fraction):
        return str(value)
    if value is None or isinstance(value, str):
        return value
    return str(value)


def split_complex_columns(df : pd.DataFrame) -> pd.DataFrame:
    """Spreadsheet-ready copy of a table.

    Every complex column ``c`` becomes ``c_re`` and ``c_im``; other object
    columns (tuples, fractions) are written as strings.
    """
    columns = {}
    for name in df.columns:
        values = df[name].to_numpy()
        if values.dtype == object and len(values) and all(
            isinstance(v, (complex, np.complexfloating)) for v in values
        ):
            values = values.astype(np.complex128)
        if np.iscomplexobj(values):
            columns[f'{name}_re'] = values.real
            columns[f'{name}_im'] = values.imag
        elif values.dtype == object:
            columns[name] = [str(v) for v in values]
        else:
            columns[name] = values
    return pd.DataFrame(columns, index=df.index)


@dataclass
class Report:
    """Outcome of one command.

    Parameters
    ----------
    command : str
        Echo of the command line.
    tolerances : Tolerances
        Thresholds used.
    seed : int
        Seed used.
    verdicts : Dict[str, bool]
        Named boolean outcomes.
    tables : Dict[str, pd.DataFrame]
        Residual and result tables.
    timing : float
        Wall time in seconds.
    details : Dict[str, Any]
        Other results (profiles, decompositions).
    """
    command : str
    tolerances : Tolerances
    seed : int
    verdicts : Dict[str, bool] = field(default_factory=dict)
    tables : Dict[str, pd.DataFrame] = field(default_factory=dict)
    timing : float = 0.0
    details : Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dictionary of the report."""
        return {
            'command': self.command,
            'tolerances': asdict(self.tolerances),
            'seed': self.seed,
            'verdicts': to_jsonable(self.verdicts),
            'tables': {
                name: to_jsonable(df.to_dict(orient='records'))
                for name, df in self.tables.items()
            },
            'timing': self.timing,
            'details': to_jsonable(self.details),
        }

    def to_json(self) -> str:
        """JSON rendering."""
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        """Human-readable rendering with the same verdicts as the JSON."""
        lines = [f'command: {self.command}', f'seed: {self.seed}']
        lines.append('tolerances: ' + ', '.join(
            f'{k}={v}' for k, v in asdict(self.tolerances).items()
        ))
        lines.append('verdicts:')
        for name, verdict in self.verdicts.items():
            lines.append(f'  {name}: {str(bool(verdict)).lower()}')
        for name, value in self.details.items():
            lines.append(f'{name}: {json.dumps(to_jsonable(value))}')
        for name, df in self.tables.items():
            lines.append(f'[{name}]')
            lines.append(df.to_string(index=False) if len(df) else '(empty)')
        lines.append(f'timing: {self.timing:.3f} s')
        return '\n'.join(lines)


def ensure_parent_folder(file_path : str) -> None:
    """Create the folder of ``file_path`` if it does not exist."""
    folder = os.path.dirname(os.path.abspath(file_path))
    if not os.path.exists(folder):
        os.makedirs(folder)
        logging.warning("Folder %s created", folder)


def create_data_array(
    track : np.ndarray, zs : Sequence[complex], attrs : Optional[dict] = None
) -> xr.DataArray:
    """Label tracked eigenvalues by sample and branch.

    Parameters
    ----------
    track : np.ndarray
        Array of shape ``(samples, n)``, column ``k`` being branch ``k``.
    zs : Sequence[complex]
        Pencil parameter of every sample.
    attrs : Optional[dict]
        Attributes such as the centre and radius of the path.

    Returns
    -------
    xr.DataArray
        DataArray with dims ``sample`` and ``branch`` and a ``z``
        coordinate along ``sample``.
    """
    samples, n = track.shape
    return xr.DataArray(
        data=track,
        dims=['sample', 'branch'],
        coords={
            'sample': np.arange(samples),
            'branch': np.arange(n),
            'z': ('sample', np.asarray(zs, dtype=np.complex128)),
        },
        attrs=attrs or {}
    )


def trajectory_frame(trajectory : xr.DataArray) -> pd.DataFrame:
    """Flatten a trajectory to one row per sample and branch.

    Returns
    -------
    pd.DataFrame
        Columns ``z_re``, ``z_im``, ``branch_id``, ``lambda_re``,
        ``lambda_im``.
    """
    flat = trajectory.to_dataframe(name='value').reset_index()
    z = flat['z'].to_numpy(dtype=np.complex128)
    value = flat['value'].to_numpy(dtype=np.complex128)
    return pd.DataFrame({
        'z_re': z.real,
        'z_im': z.imag,
        'branch_id': flat['branch'].to_numpy(dtype=int),
        'lambda_re': value.real,
        'lambda_im': value.imag,
    })


def save_trajectory_csv(trajectory : xr.DataArray, file_path : str) -> None:
    """Write a trajectory as CSV with a header row."""
    ensure_parent_folder(file_path)
    frame = trajectory_frame(trajectory)
    frame.to_csv(file_path, index=False)
    logging.info("Wrote %d trajectory rows to %s", len(frame), file_path)


@timer
def save_to_excel(
    tables : Dict[str, pd.DataFrame], output_filename : str
) -> None:
    """Save report tables to an Excel workbook, one sheet per table.

    Parameters
    ----------
    tables : Dict[str, pd.DataFrame]
        Tables keyed by name.
    output_filename : str
        Workbook path; ``.xlsx`` is appended when missing.
    """
    if not output_filename.endswith('.xlsx'):
        output_filename = f'{output_filename}.xlsx'
    ensure_parent_folder(output_filename)
    # pylint: disable=abstract-class-instantiated
    with pd.ExcelWriter(output_filename, engine='xlsxwriter') as writer:
        for name, df in tables.items():
            split_complex_columns(df).to_excel(
                writer, sheet_name=name[:MAX_SHEET_NAME], index=False
            )
    logging.info("Report tables are written to %s", output_filename)


def write_report(
    report : Report, output_format : str = 'text',
    report_path : Optional[str] = None, excel_path : Optional[str] = None
) -> str:
    """Render a report and save the requested files.

    Parameters
    ----------
    report : Report
        The report.
    output_format : str, optional
        ``'text'`` or ``'json'``, by default ``'text'``.
    report_path : Optional[str]
        Where to save the JSON rendering.
    excel_path : Optional[str]
        Where to save the tables as a workbook.

    Returns
    -------
    str
        The rendering for standard output.
    """
    if report_path:
        ensure_parent_folder(report_path)
        with open(report_path, 'w', encoding='utf-8') as f:
            f.write(report.to_json())
        logging.info("Report is written to %s", report_path)
    if excel_path and report.tables:
        save_to_excel(report.tables, excel_path)
    if output_format == 'json':
        return report.to_json()
    return report.to_text()
