from __future__ import annotations

from typing import Any, Dict

from django.core.validators import MinValueValidator
from django.db import models

from .geometry import ZKind


# --- QuerySet dziennika obliczeń ---
class EstimateRunQuerySet(models.QuerySet):
    def recent(self, limit: int = 20):
        return self.order_by("-created_at", "-id")[:limit]

    def unique_minimum(self):
        return self.filter(unique_minimum=True)


class EstimateRun(models.Model):
    """Jedno wywołanie estymatora: dokument problemu, wynik i certyfikat."""

    class Source(models.TextChoices):
        API = "api", "API"
        CLI = "cli", "Wiersz poleceń"

    created_at = models.DateTimeField(auto_now_add=True, db_index=True)
    source = models.CharField("Źródło", max_length=8, choices=Source.choices, default=Source.API)

    problem = models.JSONField("Problem")
    dimension = models.PositiveSmallIntegerField("d", validators=[MinValueValidator(1)])
    ball_count = models.PositiveIntegerField("#A", validators=[MinValueValidator(1)])
    n = models.PositiveBigIntegerField("n", validators=[MinValueValidator(1)])

    log_value = models.FloatField("log Ψ")
    winner_m = models.PositiveSmallIntegerField("m")
    winner_kind = models.CharField("Rodzaj Z", max_length=16, choices=ZKind.choices)
    unique_minimum = models.BooleanField("Jednoznaczne minimum", default=True)
    result = models.JSONField("Wynik")

    objects = EstimateRunQuerySet.as_manager()

    class Meta:
        ordering = ["-created_at", "-id"]
        indexes = [
            models.Index(fields=["winner_m", "winner_kind"], name="core_run_winner_idx"),
        ]

    def __str__(self):
        return f"[{self.created_at:%Y-%m-%d %H:%M:%S}] d={self.dimension} n={self.n} log Ψ={self.log_value:.6g}"

    def to_info_dict(self) -> Dict[str, Any]:
        return {
            "id": self.pk,
            "created_at": self.created_at.isoformat(),
            "source": self.source,
            "d": self.dimension,
            "ball_count": self.ball_count,
            "n": self.n,
            "log_value": self.log_value,
            "winner_m": self.winner_m,
            "winner_kind": self.winner_kind,
            "unique_minimum": self.unique_minimum,
        }
