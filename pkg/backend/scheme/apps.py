from django.apps import AppConfig


class SchemeConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'scheme'
    verbose_name = 'Поуровневое CP-ABE шифрование'
