from django.contrib import admin

from .models import EstimateRun


@admin.register(EstimateRun)
class EstimateRunAdmin(admin.ModelAdmin):
    list_display = (
        "created_at",
        "source",
        "dimension",
        "ball_count",
        "n",
        "log_value",
        "winner_m",
        "winner_kind",
        "unique_flag",
    )
    list_filter = ("source", "winner_m", "winner_kind", "unique_minimum")
    readonly_fields = ("created_at", "problem", "result")
    date_hierarchy = "created_at"
    ordering = ("-created_at",)

    def unique_flag(self, obj):
        return obj.unique_minimum
    unique_flag.boolean = True
    unique_flag.short_description = "Jednoznaczne?"
