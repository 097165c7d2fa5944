from cloud.store import BlockStore
from core.commands import RoleCommand
from core.exceptions import DecodeError
from scheme.verification import make_challenge
from scheme.wire import (decode_ctb, decode_master_key, encode_challenge,
                         read_key_file, write_key_file)


class Command(RoleCommand):
    help = 'TA: кортеж проверки целостности по Č из облака'

    def add_arguments(self, parser):
        parser.add_argument('message_id')
        parser.add_argument('--out', required=True)
        parser.add_argument('--keys-dir', default=None)
        parser.add_argument('--store-dir', default=None)

    def handle_role(self, *args, **options):
        mk = decode_master_key(read_key_file(
            self.key_path('master', keys_dir=options['keys_dir'])))
        store = BlockStore(options['store_dir'])
        first = decode_ctb(store.get(options['message_id'], 1))
        if first.commitment is None:
            raise DecodeError('first block carries no commitment')
        challenge = make_challenge(first.commitment, mk, self.get_rng())
        write_key_file(options['out'], encode_challenge(challenge))
        self.stdout.write(options['out'])
