import logging

from cloud.store import BlockStore
from core.commands import RoleCommand
from core.exceptions import AccessDenied
from pipeline.executor import run_pipeline
from pipeline.link import LinkModel
from pipeline.timing import Side
from scheme.decryption import MessageDecryptor
from scheme.wire import decode_ctb, decode_secret_key, read_key_file

logger = logging.getLogger(__name__)


class Command(RoleCommand):
    help = 'DR: загрузка блоков из облака и расшифрование сообщения'

    def add_arguments(self, parser):
        parser.add_argument('message_id')
        parser.add_argument('--sk', required=True,
                            help='Файл секретного ключа')
        parser.add_argument('--out', required=True)
        parser.add_argument('--store-dir', default=None)
        parser.add_argument('--pipeline', action='store_true',
                            help='Перекрывать приём и расшифрование')
        parser.add_argument('--bandwidth', type=float, default=None)
        parser.add_argument('--latency', type=float, default=None)

    def handle_role(self, *args, **options):
        sk = decode_secret_key(read_key_file(options['sk']))
        payloads = BlockStore(options['store_dir']).download(
            options['message_id'])
        decryptor = MessageDecryptor(sk)

        def receive(payload):
            decryptor.receive(decode_ctb(payload))

        if options['pipeline']:
            run_pipeline(
                payloads,
                LinkModel.from_settings(options['bandwidth'],
                                        options['latency']),
                Side.DEC,
                worker=receive,
            )
        else:
            for payload in payloads:
                receive(payload)

        message = decryptor.result()
        if message is None:
            raise AccessDenied()
        with open(options['out'], 'wb') as f:
            f.write(message)
        logger.info('message %s decrypted (%d bytes)',
                    options['message_id'], len(message))
        self.stdout.write(options['out'])
