from core.commands import RoleCommand
from scheme.verification import verify_message
from scheme.wire import decode_challenge, read_key_file


class Command(RoleCommand):
    help = 'DR: проверка целостности расшифрованного сообщения'

    def add_arguments(self, parser):
        parser.add_argument('file')
        parser.add_argument('v_file')

    def handle_role(self, *args, **options):
        challenge = decode_challenge(read_key_file(options['v_file']))
        with open(options['file'], 'rb') as f:
            message = f.read()
        self.stdout.write(str(verify_message(message, challenge)))
