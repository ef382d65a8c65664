#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""This module contains functions to set up logging for an analysis run and to
log the start and end of functions.
"""

import logging
import time
from typing import Any, Dict, Union
from pathlib import Path
from functools import wraps

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(
    log_folder : Union[str, None] = 'log',
    level : int = logging.INFO
) -> None:
    """Set up logging configuration for the analysis run.

    Parameters
    ----------
    log_folder : Union[str, None], optional
        Folder receiving the timestamped log file, by default ``'log'``.
        ``None`` logs to the console only.
    level : int, optional
        Logging level, by default ``logging.INFO``.
    """
    handlers = []
    if log_folder is not None:
        # Create a log file with a timestamp.
        log_dir = Path(log_folder)
        log_dir.mkdir(parents=True, exist_ok=True)
        log_time = time.strftime("%Y-%m-%d-%H-%M-%S")
        handlers.append(
            logging.FileHandler(log_dir / f'main_{log_time}.log')
        )

    # Set up console logging.
    console = logging.StreamHandler()
    console.setLevel(level)
    handlers.append(console)

    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=handlers,
        force=True
    )


def log_parameter_info(params : Dict[str, Any]) -> None:
    """Log key parameters used for the analysis.

    Parameters
    ----------
    params : Dict[str, Any]
        Flattened parameter dictionary (see
        :func:`pencillab.load_data.extract_config_data`).
    """
    tolerances = params['tolerances']
    for name in ('eps_root', 'eps_rank', 'eps_cluster', 'eps_verify',
                 'max_iter'):
        logging.info(
            "Set parameter %s to value %s", name, getattr(tolerances, name)
        )
    logging.info("Set parameter seed to value %s", params['seed'])
    logging.info(
        "Set parameter expm_norm_bound to value %s", params['expm_norm_bound']
    )


def timer(func : object) -> Any:
    """Decorator to log the start and end of a function and its runtime.

    Parameters
    ----------
    func : function
        The function to be decorated.

    Returns
    ----------
    Any
        The return value of decorated function.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        logging.info("Start running %s", repr(func.__name__))
        start_time = time.time()
        result = func(*args, **kwargs)
        run_time = time.time() - start_time
        logging.info(
            "Finished %s in %.2f secs", repr(func.__name__),
            run_time
        )
        return result
    return wrapper
