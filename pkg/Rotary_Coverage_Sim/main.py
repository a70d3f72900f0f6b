#!/usr/bin/env python3
"""
Rotary coverage simulator entry point.
Run this file (or ``python -m Rotary_Coverage_Sim.main``) with ``--config``.
"""
try:
    # Try direct import first (when running from within the directory)
    from sim.cli import main
except ImportError:
    # Fallback to package import (when installed as a package)
    from Rotary_Coverage_Sim.sim.cli import main

if __name__ == "__main__":
    main()
