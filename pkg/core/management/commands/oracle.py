from core.conf import widths_setting
from core.estimator import estimate
from core.genpos import Scope, check_general_position
from core.oracle import GridSpec, equivalence_holds, exhaustive_phi_check, grid_min, verdict
from core.problem import CapacityError
from core.serializers import fmt, fmt_list, result_to_dict

from ._common import Format, WidthsCommand, add_scope_argument


class Command(WidthsCommand):
    help = "Porównuje oszacowanie strukturalne z minimum na siatce simpleksu."

    def add_arguments(self, parser):
        super().add_arguments(parser)
        add_scope_argument(parser)
        parser.add_argument("--grid", type=int, help="Rozdzielczość siatki r (≥ 2).")
        parser.add_argument("--phi-check", dest="phi_check", type=int, default=0,
                            help="Dodatkowo: liczba losowych prób zgodności Φ.")

    def general_position(self, problem, config, tol) -> bool:
        try:
            report = check_general_position(problem, tol=tol, scope=config.scope, seed=config.seed)
        except CapacityError as exc:
            self.diag(f"{exc}; warunek 3 pominięty")
            report = check_general_position(problem, tol=tol, scope=Scope.OFF)
        return report.is_general_position

    def run(self, config, **options):
        problem = self.read_problem(config, n=options.get("n"))
        tol = config.tolerance if config.tolerance is not None else widths_setting("TOLERANCE")
        grid = GridSpec(config.grid, max_points=int(widths_setting("GRID_MAX_POINTS")))

        result = estimate(problem, tol=tol)
        oracle = grid_min(problem, grid)
        est = result.log_value.log_value
        low = oracle.log_value.log_value
        passed = equivalence_holds(est, oracle, tol)
        general = self.general_position(problem, config, tol)

        phi_report = None
        if options.get("phi_check"):
            phi_report = exhaustive_phi_check(options["phi_check"], seed=config.seed, tol=tol)
            passed = passed and phi_report.passed

        label = verdict(passed, general)
        if not passed:
            if general:
                self.diag("FAIL: oszacowanie i wyrocznia siatkowa są niezgodne")
            else:
                self.diag("FAIL: punkty nie są w położeniu ogólnym, niezgodność nie jest błędem estymatora")

        if config.output_format == Format.JSON:
            payload = {
                "estimate": result_to_dict(result),
                "grid": {
                    "r": grid.r,
                    "points": oracle.points,
                    "log_value": low,
                    "value": oracle.log_value.value,
                    "weights": list(oracle.weights),
                    "error_bound": oracle.error_bound,
                },
                "general_position": general,
                "passed": passed,
                "verdict": label,
            }
            if phi_report is not None:
                payload["phi_check"] = {
                    "samples": phi_report.samples,
                    "max_abs_diff": phi_report.max_abs_diff,
                    "failures": len(phi_report.failures),
                }
            self.emit_json(config, payload)
            return

        lines = [
            f"estimate     {fmt(result.log_value.value)} (log {fmt(est)})",
            f"grid_min     {fmt(oracle.log_value.value)} (log {fmt(low)}) r={grid.r} points={oracle.points}",
            f"grid_lambda  {fmt_list(oracle.weights)}",
            f"error_bound  {fmt(oracle.error_bound)}",
            f"general_position  {'true' if general else 'false'}",
        ]
        if phi_report is not None:
            lines.append(
                f"phi_check    {phi_report.samples} samples, max |Δ| = {fmt(phi_report.max_abs_diff)},"
                f" {len(phi_report.failures)} failures")
        lines.append(label)
        self.emit(config, "\n".join(lines))
