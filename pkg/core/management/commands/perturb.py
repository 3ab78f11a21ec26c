from django.core.management.base import CommandError

from core.genpos import perturb, stability_probe
from core.serializers import dump_problem, fmt

from ._common import EXIT_VALIDATION, Format, WidthsCommand, add_scope_argument


class Command(WidthsCommand):
    help = "Przesuwa punkty 1/p̄ o ≤ ε do położenia ogólnego i zapisuje nowy plik problemu."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_scope_argument(parser)
        parser.add_argument("--epsilon", type=float, help="Maksymalne przesunięcie współrzędnej.")
        parser.add_argument("--probe", type=float, nargs="+",
                            help="Zamiast zapisu: |Δ log Ψ| dla podanych ε.")

    def run(self, config, **options):
        problem = self.read_problem(config, n=options.get("n"))

        if options.get("probe"):
            rows = stability_probe(problem, options["probe"], seed=config.seed, scope=config.scope)
            if config.output_format == Format.JSON:
                self.emit_json(config, [{"epsilon": e, "deviation": dev} for e, dev in rows])
            else:
                self.emit_csv(config, ["epsilon", "deviation"], [[fmt(e), fmt(dev)] for e, dev in rows])
            return

        epsilon = options.get("epsilon")
        if epsilon is None:
            raise CommandError("Podaj --epsilon albo --probe.", returncode=EXIT_VALIDATION)
        moved = perturb(problem, epsilon, seed=config.seed, scope=config.scope, tol=config.tolerance)
        self.emit(config, dump_problem(moved, reciprocal=True))
