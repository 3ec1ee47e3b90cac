from django.apps import AppConfig


class VoiSelectionConfig(AppConfig):
    name = 'voi_selection'
    verbose_name = "Value of Information Selection"
