# core/api.py (zwykłe Django, JsonResponse)
import json
import logging

from django.http import JsonResponse
from django.views.decorators.csrf import csrf_exempt
from django.views.decorators.http import require_GET, require_POST

from .estimator import estimate
from .forms import ProblemForm
from .genpos import Scope, check_general_position
from .problem import ProblemValidationError, WidthsError
from .serializers import result_to_dict
from .services.runs import recent_runs, record_run
from .witness import build_witness_m1, inclusion_check

logger = logging.getLogger(__name__)


def _error(message, status=400, code="invalid"):
    return JsonResponse({"ok": False, "errors": {"__all__": [message]}, "code": code}, status=status)


def _problem_from_request(request):
    """(problem, None) albo (None, odpowiedź z błędem)."""
    try:
        data = json.loads(request.body or b"")
    except (ValueError, UnicodeDecodeError):
        return None, _error("Ciało żądania nie jest poprawnym JSON-em.", code="malformed")
    if not isinstance(data, dict):
        return None, _error("Oczekiwano obiektu JSON.", code="malformed")
    try:
        return ProblemForm.from_document(data).problem(), None
    except ProblemValidationError as exc:
        return None, _error("; ".join(exc.messages), code=exc.code or "invalid")


def _int_param(request, name, default):
    raw = request.GET.get(name)
    if raw in (None, ""):
        return default
    return int(raw)


@csrf_exempt
@require_POST
def api_estimate(request):
    problem, err = _problem_from_request(request)
    if err:
        return err
    try:
        result = estimate(problem)
    except WidthsError as exc:
        logger.exception("Estymator nie zwrócił wyniku.")
        return _error(str(exc), status=422, code="computation")
    payload = {"ok": True, "result": result_to_dict(result, diagnostics=request.GET.get("diagnostics") == "1")}
    if request.GET.get("record", "1") != "0":
        payload["run_id"] = record_run(problem, result).pk
    return JsonResponse(payload)


@csrf_exempt
@require_POST
def api_witness(request):
    problem, err = _problem_from_request(request)
    if err:
        return err
    try:
        alpha = _int_param(request, "alpha", None)
    except ValueError:
        return _error("Parametr alpha musi być liczbą całkowitą.")
    if alpha is None:
        winner = estimate(problem).winner
        if winner.m != 1:
            return _error(f"Zwycięzca ma m = {winner.m}; podaj alpha jawnie.", code="not_m1")
        alpha = winner.ball_indices[0] + 1
    try:
        # alpha w zapytaniu liczone od 1
        witness = build_witness_m1(problem, alpha - 1)
    except ProblemValidationError as exc:
        return _error("; ".join(exc.messages), code=exc.code or "invalid")
    report = inclusion_check(problem, witness)
    return JsonResponse({"ok": True, "witness": witness.to_dict(), "inclusion": report.to_dict()})


@csrf_exempt
@require_POST
def api_genpos(request):
    problem, err = _problem_from_request(request)
    if err:
        return err
    scope = request.GET.get("scope") or None
    if scope is not None and scope not in Scope.values:
        return _error(f"Nieznany zakres: {scope!r}.")
    try:
        seed = _int_param(request, "seed", 0)
        report = check_general_position(problem, scope=scope, seed=seed)
    except ValueError:
        return _error("Parametr seed musi być liczbą całkowitą.")
    except WidthsError as exc:
        return _error(str(exc), status=422, code="capacity")
    return JsonResponse({"ok": True, "report": report.to_dict()})


@require_GET
def api_runs(request):
    try:
        limit = max(1, min(_int_param(request, "limit", 20), 200))
    except ValueError:
        return _error("Parametr limit musi być liczbą całkowitą.")
    unique_only = request.GET.get("unique") == "1"
    return JsonResponse({"runs": [r.to_info_dict() for r in recent_runs(limit, unique_only=unique_only)]})
