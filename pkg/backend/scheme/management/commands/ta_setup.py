import logging
import os

from core.commands import RoleCommand
from scheme.keys import EncryptionContext, setup
from scheme.wire import (encode_context, encode_master_key,
                         encode_public_key, write_key_file)

logger = logging.getLogger(__name__)


class Command(RoleCommand):
    help = 'TA: генерация открытого и мастер-ключа'

    def add_arguments(self, parser):
        parser.add_argument('--out-dir', default=None,
                            help='Каталог для ключей (KEYS_DIR)')

    def handle_role(self, *args, **options):
        out_dir = options['out_dir']
        pk, mk = setup(self.get_rng())
        paths = {kind: self.key_path(kind, keys_dir=out_dir)
                 for kind in ('public', 'master', 'context')}
        os.makedirs(os.path.dirname(paths['public']) or '.', exist_ok=True)
        write_key_file(paths['public'], encode_public_key(pk))
        write_key_file(paths['master'], encode_master_key(mk), private=True)
        write_key_file(paths['context'],
                       encode_context(EncryptionContext.from_master(pk, mk)),
                       private=True)
        for path in paths.values():
            self.stdout.write(path)
