import re

from django.core.management.base import CommandError

from core.estimator import sweep_n
from core.serializers import SWEEP_HEADER, result_to_dict, sweep_row_cells

from ._common import EXIT_VALIDATION, Format, WidthsCommand

RANGE_RE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.|:)\s*(-?\d+)\s*$")


def parse_n_range(raw: str):
    """'1..8' albo '1:8' (oba końce włącznie); pusty, gdy koniec < początek."""
    match = RANGE_RE.match(raw or "")
    if not match:
        raise CommandError(f"Niepoprawny zakres n: {raw!r} (oczekiwano A..B).", returncode=EXIT_VALIDATION)
    lo, hi = int(match.group(1)), int(match.group(2))
    return list(range(lo, hi + 1))


class Command(WidthsCommand):
    help = "Oszacowania dla kolejnych n; CSV gotowy do wykresu."

    default_format = Format.CSV

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--n-range", dest="n_range", help="Zakres n, np. 1..64.")
        parser.add_argument("--n-values", dest="n_values", type=int, nargs="*", help="Jawna lista n.")
        parser.add_argument("--workers", type=int)

    def run(self, config, **options):
        # n z pliku zastępuje przebieg, więc go nie sprawdzamy
        problem = self.read_problem(config, n=1)
        if options.get("n_values") is not None:
            n_values = list(options["n_values"])
        elif options.get("n_range"):
            n_values = parse_n_range(options["n_range"])
        elif options.get("n") is not None:
            n_values = [options["n"]]
        else:
            n_values = list(range(1, problem.max_n + 1))

        rows = sweep_n(problem, n_values, tol=config.tolerance, workers=options.get("workers"))
        for row in rows:
            if row.error:
                self.diag(f"n = {row.n}: {row.error}")

        if config.output_format == Format.JSON:
            self.emit_json(config, [
                {"n": r.n, "error": r.error, "result": result_to_dict(r.result) if r.result else None}
                for r in rows
            ])
        else:
            self.emit_csv(config, SWEEP_HEADER, [sweep_row_cells(r) for r in rows])
