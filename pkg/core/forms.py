# core/forms.py
import json

from django import forms

from .problem import (
    BallSpec,
    ProblemSpec,
    ProblemValidationError,
    ReciprocalVector,
    WidthIndexError,
    reciprocal_of_p,
    validate,
)
from .validators import validate_ball_list, validate_positive_int_list, validate_q_list


class ProblemForm(forms.Form):
    """
    Walidacja dokumentu problemu (plik JSON lub ciało żądania API).
    Po is_valid() gotowy, kanoniczny ProblemSpec leży w cleaned_data["problem"].
    """

    k = forms.JSONField(label="k̄", validators=[validate_positive_int_list])
    q = forms.JSONField(label="q̄", validators=[validate_q_list])
    n = forms.IntegerField(label="n")
    balls = forms.JSONField(label="A", validators=[validate_ball_list])

    @classmethod
    def from_document(cls, data: dict) -> "ProblemForm":
        bound = {}
        for name in ("k", "q", "balls"):
            if name in data:
                bound[name] = json.dumps(data[name])
        if "n" in data:
            n = data["n"]
            # 8.0 przechodzi jako 8, 8.5 odrzuca IntegerField
            bound["n"] = str(int(n)) if isinstance(n, float) and n.is_integer() else str(n)
        return cls(data=bound)

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        balls = []
        for raw in cleaned["balls"]:
            if "x" in raw:
                point = ReciprocalVector(tuple(float(v) for v in raw["x"]))
            else:
                point = reciprocal_of_p(raw["p"])
            balls.append(BallSpec(nu=float(raw["nu"]), p=point))
        spec = ProblemSpec(
            k=tuple(cleaned["k"]),
            q=tuple(float(v) for v in cleaned["q"]),
            n=cleaned["n"],
            balls=tuple(balls),
        )
        try:
            cleaned["problem"] = validate(spec)
        except ProblemValidationError as exc:
            self.add_error(None, exc)
        return cleaned

    def problem(self) -> ProblemSpec:
        """ProblemSpec albo pierwszy błąd walidacji (z zachowanym typem i kodem)."""
        if not self.is_valid():
            errors = [e for errs in self.errors.as_data().values() for e in errs]
            typed = next((e for e in errors if isinstance(e, ProblemValidationError)), None)
            if typed is not None:
                raise typed
            if "n" in self.errors:
                raise WidthIndexError(f"n: {'; '.join(self.errors['n'])}")
            raise ProblemValidationError(
                "; ".join(f"{field}: {m}" for field, msgs in self.errors.items() for m in msgs))
        return self.cleaned_data["problem"]
