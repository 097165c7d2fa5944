import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "outsourcing.settings")
django.setup()
