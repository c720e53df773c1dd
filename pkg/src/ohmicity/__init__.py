"""Ohmicity classification of spin-boson environments from observable dynamics."""

__version__ = "0.1.0"

from .data import (CLASS_ORDER, Dataset, Interval, LabeledTrajectory,
                   OhmicityClass, ScenarioSpec, Trajectory, inject_noise,
                   load_dataset, save_dataset, scenario_presets)
from .kernels import (ZERO_TEMPERATURE, KernelGrid, SpectralDensity,
                      correlation_function, dissipation_kernel, evaluate_sd,
                      noise_kernel, tabulate_kernels)

__all__ = [
    "CLASS_ORDER", "Dataset", "Interval", "KernelGrid", "LabeledTrajectory",
    "OhmicityClass", "ScenarioSpec", "SpectralDensity", "Trajectory",
    "ZERO_TEMPERATURE", "correlation_function", "dissipation_kernel",
    "evaluate_sd", "inject_noise", "load_dataset", "noise_kernel",
    "save_dataset", "scenario_presets", "tabulate_kernels",
]
