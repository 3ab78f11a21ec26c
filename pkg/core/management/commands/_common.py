# core/management/commands/_common.py
"""
Wspólna obsługa podkomend: opcje, wczytanie pliku problemu, zapis wyniku
i mapowanie błędów na kody wyjścia (2 – walidacja, 3 – I/O, 4 – błąd wewnętrzny).
"""
from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from django.core.management.base import BaseCommand, CommandError

from core.conf import widths_setting
from core.genpos import Scope
from core.problem import ProblemSpec, ProblemValidationError, WidthsError
from core.serializers import load_problem

logger = logging.getLogger("core.commands")

EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_INTERNAL = 4


class Format:
    HUMAN = "human"
    CSV = "csv"
    JSON = "json"
    CHOICES = (HUMAN, CSV, JSON)


@dataclass(frozen=True)
class RunConfig:
    input_path: Optional[Path]
    output_path: Optional[Path]
    tolerance: Optional[float]
    grid: int
    seed: int
    scope: str
    output_format: str

    @classmethod
    def from_options(cls, options) -> "RunConfig":
        grid = options.get("grid")
        return cls(
            input_path=Path(options["input"]) if options.get("input") else None,
            output_path=Path(options["output"]) if options.get("output") else None,
            tolerance=options.get("tol"),
            grid=int(grid if grid is not None else widths_setting("GRID_RESOLUTION")),
            seed=int(options.get("seed") or 0),
            scope=options.get("scope") or widths_setting("GENPOS_SCOPE"),
            output_format=options.get("format") or Format.HUMAN,
        )


class WidthsCommand(BaseCommand):
    """Baza podkomend; podklasy implementują `run(config, **options)`."""

    default_format = Format.HUMAN
    needs_input = True

    def add_arguments(self, parser):
        parser.add_argument("--input", "-i", required=self.needs_input, help="Plik problemu (JSON).")
        parser.add_argument("--output", "-o", help="Plik wyjściowy (domyślnie stdout).")
        parser.add_argument("--tol", type=float, help="Tolerancja numeryczna.")
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--format", choices=Format.CHOICES, default=self.default_format)
        parser.add_argument("--n", type=int, help="Nadpisuje n z pliku.")

    def handle(self, *args, **options):
        config = RunConfig.from_options(options)
        try:
            self.run(config, **options)
        except CommandError:
            raise
        except ProblemValidationError as exc:
            raise CommandError("; ".join(exc.messages), returncode=EXIT_VALIDATION)
        except OSError as exc:
            raise CommandError(f"Błąd wejścia/wyjścia: {exc}", returncode=EXIT_IO)
        except WidthsError as exc:
            raise CommandError(str(exc), returncode=EXIT_INTERNAL)
        except Exception as exc:
            logger.exception("Nieoczekiwany błąd podkomendy.")
            raise CommandError(f"Błąd wewnętrzny: {exc}", returncode=EXIT_INTERNAL)

    def run(self, config: RunConfig, **options):
        raise NotImplementedError

    # --- wejście ---
    def read_problem(self, config: RunConfig, n: Optional[int] = None) -> ProblemSpec:
        if config.input_path is None:
            raise CommandError("Brak pliku wejściowego (--input).", returncode=EXIT_IO)
        try:
            text = config.input_path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CommandError(f"Nie można odczytać {config.input_path}: {exc}", returncode=EXIT_IO)
        try:
            return load_problem(text, n=n)
        except ValueError as exc:
            raise CommandError(f"Niepoprawny plik problemu {config.input_path}: {exc}", returncode=EXIT_IO)

    # --- wyjście ---
    def emit(self, config: RunConfig, text: str):
        """Dane na stdout albo do pliku --output; zawsze zakończone LF."""
        if not text.endswith("\n"):
            text += "\n"
        if config.output_path is None:
            self.stdout.write(text, ending="")
            return
        try:
            config.output_path.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise CommandError(f"Nie można zapisać {config.output_path}: {exc}", returncode=EXIT_IO)

    def emit_json(self, config: RunConfig, payload):
        self.emit(config, json.dumps(payload, sort_keys=True, indent=2))

    def emit_csv(self, config: RunConfig, header: Sequence[str], rows: Iterable[Sequence[str]]):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        self.emit(config, buf.getvalue())

    def diag(self, message: str):
        self.stderr.write(message)


def add_scope_argument(parser):
    parser.add_argument("--scope", choices=Scope.values, help="Zakres sprawdzania warunku 3.")
