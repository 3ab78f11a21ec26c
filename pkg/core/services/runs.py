# core/services/runs.py
import logging

from django.db import transaction

from ..estimator import EstimateResult
from ..models import EstimateRun
from ..problem import ProblemSpec
from ..serializers import problem_to_dict, result_to_dict

logger = logging.getLogger(__name__)


@transaction.atomic
def record_run(problem: ProblemSpec, result: EstimateResult, source: str = EstimateRun.Source.API) -> EstimateRun:
    """Zapisuje wynik estymatora w dzienniku; problem w zapisie dokładnym (1/p)."""
    run = EstimateRun.objects.create(
        source=source,
        problem=problem_to_dict(problem, reciprocal=True),
        dimension=problem.d,
        ball_count=len(problem.balls),
        n=problem.n,
        log_value=result.log_value.log_value,
        winner_m=result.winner.m,
        winner_kind=str(result.winner.Z.kind),
        unique_minimum=result.unique_minimum,
        result=result_to_dict(result),
    )
    logger.info("Zapisano obliczenie #%s (log Ψ = %.12g).", run.pk, run.log_value)
    return run


def recent_runs(limit: int = 20, unique_only: bool = False):
    runs = EstimateRun.objects.all()
    if unique_only:
        runs = runs.unique_minimum()
    return list(runs.recent(limit))


@transaction.atomic
def purge_runs(keep: int = 0) -> int:
    """Usuwa wszystkie poza `keep` najnowszymi; zwraca liczbę usuniętych."""
    keep_ids = list(EstimateRun.objects.order_by("-created_at", "-id").values_list("id", flat=True)[:keep])
    deleted, _ = EstimateRun.objects.exclude(id__in=keep_ids).delete()
    return deleted
