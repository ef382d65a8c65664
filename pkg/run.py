#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
run.py: pencillab Entry Point
=============================

This script serves as the command-line entry point of pencillab. It loads
the configuration next to this file, parses command line arguments and runs
the requested analysis.

Usage:
    To run this script from the command line, use for example:
        $ python run.py gallery --assert
        $ python run.py write-gallery gallery.json
        $ python run.py check-pair gallery.json tu_A tu_B --kind bourgeois3 \
              --window 0 5
    or:
        $ ./run.py pencil-scan gallery.json shift_A shift_B --emit-csv out.csv
"""
import os
import sys

from pencillab.cli import main

# Name of the configuration file located in the same directory as `run.py`.
CONFIG_FILENAME = 'config.json'


if __name__ == "__main__":
    root_dir = os.path.dirname(os.path.abspath(__file__))
    sys.exit(main(default_config=os.path.join(root_dir, CONFIG_FILENAME)))
