from core.genpos import check_general_position

from ._common import Format, WidthsCommand, add_scope_argument


class Command(WidthsCommand):
    help = "Sprawdza położenie ogólne punktów 1/p̄ (warunki 1–3). Znalezione naruszenia to nie błąd."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_scope_argument(parser)

    def run(self, config, **options):
        problem = self.read_problem(config, n=options.get("n"))
        report = check_general_position(problem, tol=config.tolerance, scope=config.scope, seed=config.seed)

        if config.output_format == Format.JSON:
            self.emit_json(config, report.to_dict())
            return

        lines = [f"is_general_position  {'true' if report.is_general_position else 'false'}"]
        buckets = (
            (1, report.predicate1_violations),
            (2, report.predicate2_violations),
            (3, report.predicate3_violations),
        )
        for predicate, violations in buckets:
            lines.append(f"predicate{predicate}           {len(violations)} violations")
            for v in violations:
                balls = " ".join(str(b + 1) for b in v.balls)
                idx = " ".join(str(i + 1) for i in v.indices)
                extra = " ".join(part for part in (v.plane, v.detail) if part)
                lines.append(f"  m={v.m} I={{{idx}}} balls={{{balls}}} {extra}".rstrip())
        if report.predicate3_checked:
            lines.append(f"predicate3_scope     {'sampled' if report.predicate3_sampled else 'full'}")
        else:
            lines.append("predicate3_scope     off")
        self.emit(config, "\n".join(lines))
