import os

from dotenv import load_dotenv


load_dotenv()

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.getenv(
    'SECRET_KEY',
    default='django-insecure-example'
)

DEBUG = os.getenv('DEBUG', default='False') == 'True'

ALLOWED_HOSTS = os.getenv('ALLOWED_HOSTS', default='localhost,127.0.0.1,testserver').split(',')

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "algebra",
    "policy",
    "scheme",
    "pipeline",
    "cloud",
    "api",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "outsourcing.urls"

TEMPLATES = []

WSGI_APPLICATION = "outsourcing.wsgi.application"

DATABASES = {
    "default": {
        "ENGINE": os.getenv("DB_ENGINE", default="django.db.backends.sqlite3"),
        "NAME": os.getenv("DB_NAME", default=os.path.join(BASE_DIR, "db.sqlite3")),
    }
}

LANGUAGE_CODE = "ru-RU"

TIME_ZONE = 'Europe/Moscow'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "EXCEPTION_HANDLER": "api.exceptions.outsourcing_exception_handler",
}

PAIRING_SUITE = os.getenv('PAIRING_SUITE', default='SS512')

CLOUD_STORE_DIR = os.getenv(
    'CLOUD_STORE_DIR', default=os.path.join(BASE_DIR, 'store'))

KEYS_DIR = os.getenv('KEYS_DIR', default=os.path.join(BASE_DIR, 'keys'))

LINK_BANDWIDTH = float(os.getenv('LINK_BANDWIDTH', default=10 * 1024 * 1024))

LINK_LATENCY = float(os.getenv('LINK_LATENCY', default=0))

PIPELINE_QUEUE_SIZE = int(os.getenv('PIPELINE_QUEUE_SIZE', default=1))

LOG_LEVEL = os.getenv('LOG_LEVEL', default='INFO')

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        name: {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        }
        for name in (
            "algebra", "policy", "scheme", "pipeline", "cloud", "api", "core"
        )
    },
}
