import logging

from cloud.store import BlockStore
from core.commands import RoleCommand
from core.exceptions import ArgumentError
from pipeline.executor import run_pipeline
from pipeline.link import LinkModel
from pipeline.timing import Side
from policy.grammar import parse_policy
from scheme.encryption import MessageEncryptor
from scheme.wire import decode_context, encode_ctb, read_key_file

logger = logging.getLogger(__name__)


class Command(RoleCommand):
    help = ('DO: поуровневое шифрование файла и загрузка блоков '
            'в облако по мере готовности')

    def add_arguments(self, parser):
        parser.add_argument('message_file')
        parser.add_argument('policy')
        parser.add_argument('--context', default=None,
                            help='Файл контекста шифрования (PK, q, k)')
        parser.add_argument('--store-dir', default=None)
        parser.add_argument('--bandwidth', type=float, default=None)
        parser.add_argument('--latency', type=float, default=None)
        parser.add_argument('--serial', action='store_true',
                            help='Без перекрытия шифрования и передачи')

    def handle_role(self, *args, **options):
        tree = parse_policy(options['policy'])
        with open(options['message_file'], 'rb') as f:
            message = f.read()
        if not message:
            raise ArgumentError('empty message')
        context = decode_context(
            read_key_file(self.key_path('context', options['context'])))
        store = BlockStore(options['store_dir'])
        encryptor = MessageEncryptor(context, tree, message, self.get_rng())
        message_id = encryptor.message_id

        run = run_pipeline(
            encryptor.blocks,
            LinkModel.from_settings(options['bandwidth'],
                                    options['latency']),
            Side.ENC,
            worker=lambda block: encode_ctb(encryptor.encrypt_block(block)),
            sink=lambda index, payload: store.put(message_id, index,
                                                  payload),
            overlap=not options['serial'],
        )
        logger.info('message %s: %d blocks uploaded in %.6fs',
                    message_id, len(run.outputs), run.elapsed)
        self.stdout.write(message_id)
