"""
Synthetic dataset package: seedable generation and weather CSVs calibrated to
per-class daily output targets.
"""

from src.synth.config import SynthConfig, make_synth_config
from src.synth.generator import (
    SkyConditions,
    ac_energy,
    calibrate_gains,
    dc_energy,
    generate,
    inverter_curve,
    max_gain,
    simulate_sky,
)

__all__ = [
    'SkyConditions',
    'SynthConfig',
    'ac_energy',
    'calibrate_gains',
    'dc_energy',
    'generate',
    'inverter_curve',
    'make_synth_config',
    'max_gain',
    'simulate_sky',
]
