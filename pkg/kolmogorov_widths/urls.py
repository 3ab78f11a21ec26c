from django.contrib import admin
from django.urls import path

from core import api

urlpatterns = [
    # Panel administracyjny (dziennik obliczeń)
    path("admin/", admin.site.urls),

    # API: oszacowanie, świadek, położenie ogólne
    path("api/estimate/", api.api_estimate, name="api_estimate"),
    path("api/witness/", api.api_witness, name="api_witness"),
    path("api/genpos/", api.api_genpos, name="api_genpos"),

    # API: dziennik obliczeń
    path("api/runs/", api.api_runs, name="api_runs"),
]
