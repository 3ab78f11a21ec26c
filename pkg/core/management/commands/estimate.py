from core.estimator import estimate
from core.models import EstimateRun
from core.serializers import fmt, fmt_list, result_to_dict
from core.services.runs import record_run

from ._common import Format, WidthsCommand


class Command(WidthsCommand):
    help = "Oszacowanie rzędu szerokości n dla przecięcia kul wraz z certyfikatem."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--workers", type=int, help="Liczba wątków dla kandydatów.")
        parser.add_argument("--record", action="store_true", help="Zapisz wynik w dzienniku obliczeń.")

    def run(self, config, **options):
        problem = self.read_problem(config, n=options.get("n"))
        result = estimate(problem, tol=config.tolerance, workers=options.get("workers"))

        if int(options.get("verbosity", 1)) >= 2:
            for rej in result.rejections:
                self.diag(f"odrzucono {[i + 1 for i in rej.ball_indices]} × {rej.Z.label}: {rej.rejection}")
        if not result.unique_minimum:
            self.diag(f"uwaga: {len(result.runners_up)} kandydatów w granicy tolerancji od minimum")
        if options.get("record"):
            run = record_run(problem, result, source=EstimateRun.Source.CLI)
            self.diag(f"zapisano obliczenie #{run.pk}")

        w = result.winner
        if config.output_format == Format.JSON:
            self.emit_json(config, result_to_dict(result))
        elif config.output_format == Format.CSV:
            self.emit_csv(
                config,
                ["log_value", "value", "m", "Z_kind", "I", "balls", "lambda", "theta"],
                [[
                    fmt(w.log_value.log_value),
                    fmt(w.log_value.value),
                    str(w.m),
                    str(w.Z.kind),
                    " ".join(str(i + 1) for i in w.Z.indices),
                    " ".join(str(i + 1) for i in w.ball_indices),
                    fmt_list(w.weights.lambdas),
                    fmt_list(w.weights.theta),
                ]],
            )
        else:
            lines = [
                f"value      {fmt(result.log_value.value)}",
                f"log_value  {fmt(result.log_value.log_value)}",
                f"m          {w.m}",
                f"balls      {' '.join(str(i + 1) for i in w.ball_indices)}",
                f"Z          {w.Z.label}",
                f"lambda     {fmt_list(w.weights.lambdas)}",
                f"theta      {fmt_list(w.weights.theta)}",
                f"candidates {result.candidate_count}",
                f"unique     {'yes' if result.unique_minimum else 'no'}",
            ]
            self.emit(config, "\n".join(lines))
