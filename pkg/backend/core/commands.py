import logging
import os
import secrets

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.constants import KEY_FILE_NAMES, ExitCode
from core.exceptions import OutsourcingError

logger = logging.getLogger(__name__)


class RoleCommand(BaseCommand):
    """Base for the TA/DO/DR/bench commands.

    Subclasses implement ``handle_role``; domain errors become
    ``CommandError`` with the exit code of the error class.
    """

    def handle(self, *args, **options):
        try:
            return self.handle_role(*args, **options)
        except OutsourcingError as exc:
            logger.debug('%s failed: %s', self.__class__.__module__, exc)
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        except OSError as exc:
            raise CommandError(
                str(exc), returncode=ExitCode.IO
            ) from exc

    def handle_role(self, *args, **options):
        raise NotImplementedError

    def get_rng(self):
        return secrets.SystemRandom()

    def key_path(self, kind, path=None, keys_dir=None):
        if path:
            return path
        return os.path.join(keys_dir or settings.KEYS_DIR,
                            KEY_FILE_NAMES[kind])
