"""Shipped example models: the instantiated figure kernels."""

from __future__ import annotations

import os

from ..kernel import Kernel, load_kernel

FIGURES = ("fig1", "fig3m", "fig3n", "fig3o", "fig4m", "fig4n", "fig4o")

_DIR = os.path.dirname(__file__)


def model_path(name: str) -> str:
    if name not in FIGURES:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(FIGURES)}")
    return os.path.join(_DIR, f"{name}.json")


def load_model(name: str) -> Kernel:
    return load_kernel(model_path(name))
