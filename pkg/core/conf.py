# core/conf.py
from __future__ import annotations

from typing import Any, Dict

# Wartości domyślne – nadpisywane przez settings.WIDTHS (a te przez zmienne środowiskowe)
DEFAULTS: Dict[str, Any] = {
    "TOLERANCE": 1e-9,
    "OMEGA_TOLERANCE": 1e-12,
    "GRID_RESOLUTION": 400,
    "GRID_MAX_POINTS": 2_000_000,
    "GENPOS_SCOPE": "sampled",
    "GENPOS_SAMPLE_SIZE": 256,
    "GENPOS_BUDGET": 200_000,
    "PERTURB_RETRIES": 500,
    "RUNNER_UP_SLACK": 1e-9,
    "WORKERS": 1,
}


def widths_setting(name: str) -> Any:
    """
    Zwraca ustawienie numeryczne z settings.WIDTHS.
    Moduły obliczeniowe działają też bez skonfigurowanego Django –
    wtedy brane są DEFAULTS.
    """
    try:
        from django.conf import settings

        if settings.configured:
            overrides = getattr(settings, "WIDTHS", None) or {}
            if name in overrides:
                return overrides[name]
    except ImportError:
        pass
    return DEFAULTS[name]
