from django.core.management.base import CommandError

from core.estimator import estimate
from core.serializers import fmt, fmt_list
from core.witness import build_witness_m1, inclusion_check

from ._common import EXIT_VALIDATION, Format, WidthsCommand


class Command(WidthsCommand):
    help = "Świadek dolnego oszacowania (m = 1) i sprawdzenie inkluzji W ⊂ 2M."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--alpha", type=int, help="Numer kuli (od 1); domyślnie zwycięzca m = 1.")
        parser.add_argument("--slack", type=float, help="Luz w nierówności (log).")

    def run(self, config, **options):
        problem = self.read_problem(config, n=options.get("n"))
        if options.get("alpha") is not None:
            alpha = options["alpha"] - 1
        else:
            winner = estimate(problem, tol=config.tolerance).winner
            if winner.m != 1:
                raise CommandError(
                    f"Zwycięski kandydat ma m = {winner.m}; podaj --alpha.", returncode=EXIT_VALIDATION)
            alpha = winner.ball_indices[0]

        witness = build_witness_m1(problem, alpha)
        report = inclusion_check(problem, witness, slack=options.get("slack"))
        for row in report.failures:
            self.diag(f"inkluzja nie zachodzi dla β = {row.beta + 1}: margines {fmt(row.margin)}")

        if config.output_format == Format.JSON:
            self.emit_json(config, {"witness": witness.to_dict(), "inclusion": report.to_dict()})
            return

        lines = [
            f"alpha        {alpha + 1}",
            f"regime       {witness.regime}" + (f" t={witness.t}" if witness.t else ""),
            f"s            {fmt_list(witness.s)}",
            f"u            {' '.join(str(v) for v in witness.u)}",
            f"scale_log    {fmt(witness.scale_log)}",
            f"theoremA_log {fmt(witness.theoremA_log_value)}",
            f"witness_log  {fmt(witness.log_value)}",
            "inclusion    " + ("PASS" if report.passed else "FAIL"),
        ]
        for row in report.rows:
            lines.append(f"  β={row.beta + 1} lhs={fmt(row.lhs_log)} rhs={fmt(row.rhs_log)} margin={fmt(row.margin)}")
        self.emit(config, "\n".join(lines))
