from core.commands import RoleCommand
from policy.tree import parse_attributes
from scheme.keys import keygen
from scheme.wire import (decode_master_key, decode_public_key,
                         encode_secret_key, read_key_file, write_key_file)


class Command(RoleCommand):
    help = 'TA: выдача секретного ключа для набора атрибутов'

    def add_arguments(self, parser):
        parser.add_argument('attrs', help='Атрибуты через запятую')
        parser.add_argument('--out', required=True)
        parser.add_argument('--keys-dir', default=None)

    def handle_role(self, *args, **options):
        attrs = parse_attributes(options['attrs'])
        keys_dir = options['keys_dir']
        pk = decode_public_key(
            read_key_file(self.key_path('public', keys_dir=keys_dir)))
        mk = decode_master_key(
            read_key_file(self.key_path('master', keys_dir=keys_dir)))
        sk = keygen(pk, mk, attrs, self.get_rng())
        write_key_file(options['out'], encode_secret_key(sk), private=True)
        self.stdout.write(f'{options["out"]}: {len(sk.components)} '
                          f'attributes')
