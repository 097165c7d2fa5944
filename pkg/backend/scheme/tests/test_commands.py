import os
import shutil
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from cloud.store import BlockStore
from core.constants import ExitCode
from policy.generators import layered_policy
from scheme.wire import decode_secret_key, read_key_file


class RoleCommandTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.workdir = tempfile.mkdtemp()
        cls.keys_dir = os.path.join(cls.workdir, 'keys')
        cls.store_dir = os.path.join(cls.workdir, 'store')
        cls.settings_override = override_settings(
            KEYS_DIR=cls.keys_dir,
            CLOUD_STORE_DIR=cls.store_dir,
            LINK_BANDWIDTH=1 << 40,
            LINK_LATENCY=0,
        )
        cls.settings_override.enable()
        call_command('ta_setup', stdout=StringIO())

    @classmethod
    def tearDownClass(cls):
        cls.settings_override.disable()
        shutil.rmtree(cls.workdir, ignore_errors=True)
        super().tearDownClass()

    def path(self, name):
        return os.path.join(self.workdir, name)

    def write(self, name, data):
        with open(self.path(name), 'wb') as f:
            f.write(data)
        return self.path(name)

    def run_command(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, **options)
        return out.getvalue().strip()

    def keygen(self, attrs, name):
        self.run_command('ta_keygen', attrs, out=self.path(name))
        return self.path(name)

    def encrypt(self, message, policy, **options):
        source = self.write('plain.bin', message)
        return self.run_command('do_encrypt', source, policy, **options)

    def assertExitCode(self, code, *args, **options):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(*args, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def test_setup_writes_key_files(self):
        for name, mode in (('public.key', 0o644), ('master.key', 0o600),
                           ('context.key', 0o600)):
            path = os.path.join(self.keys_dir, name)
            self.assertTrue(os.path.exists(path))
            self.assertEqual(os.stat(path).st_mode & 0o777, mode)

    def test_keygen(self):
        sk = decode_secret_key(read_key_file(self.keygen('a,b,c', 'abc.sk')))
        self.assertEqual(len(sk.components), 3)

    def test_keygen_without_attributes(self):
        self.assertExitCode(ExitCode.FORMAT, 'ta_keygen', ' , ',
                            out=self.path('empty.sk'))

    def test_encrypt_uploads_one_block_per_level(self):
        message_id = self.encrypt(os.urandom(1024), '(a AND b)')
        self.assertEqual(len(BlockStore().list(message_id)), 2)

    def test_benchmark_policy_shape(self):
        message_id = self.encrypt(os.urandom(4096),
                                  layered_policy(10, 100), serial=True)
        records = BlockStore().list(message_id)
        self.assertEqual([record.index for record in records],
                         list(range(1, 11)))

    def test_empty_message(self):
        error = self.assertExitCode(ExitCode.FORMAT, 'do_encrypt',
                                    self.write('empty.bin', b''), 'a')
        self.assertIn('empty message', str(error))

    def test_policy_syntax_error(self):
        self.assertExitCode(ExitCode.FORMAT, 'do_encrypt',
                            self.write('some.bin', b'data'), '(a AND')

    def test_round_trip_and_verification(self):
        message = os.urandom(3000)
        message_id = self.encrypt(message, '(a AND (b OR c))')
        sk = self.keygen('a,c', 'ac.sk')
        out = self.path('decrypted.bin')
        self.run_command('dr_decrypt', message_id, sk=sk, out=out)
        with open(out, 'rb') as f:
            self.assertEqual(f.read(), message)

        v_file = self.path('challenge.vt')
        self.run_command('ta_challenge', message_id, out=v_file)
        self.assertEqual(self.run_command('dr_verify', out, v_file), 'True')
        tampered = self.write('tampered.bin',
                              bytes([message[0] ^ 0xff]) + message[1:])
        self.assertEqual(self.run_command('dr_verify', tampered, v_file),
                         'False')

    def test_pipelined_decryption(self):
        message = os.urandom(5000)
        message_id = self.encrypt(message, '(a AND (b OR c))')
        out = self.path('pipelined.bin')
        self.run_command('dr_decrypt', message_id,
                         sk=self.keygen('a,b', 'ab.sk'), out=out,
                         pipeline=True)
        with open(out, 'rb') as f:
            self.assertEqual(f.read(), message)

    def test_unsatisfying_key(self):
        message_id = self.encrypt(b'secret', '(a AND b)')
        out = self.path('denied.bin')
        error = self.assertExitCode(
            ExitCode.POLICY, 'dr_decrypt', message_id,
            sk=self.keygen('a', 'a.sk'), out=out)
        self.assertIn('access policy not satisfied', str(error))
        self.assertFalse(os.path.exists(out))

    def test_unknown_message(self):
        self.assertExitCode(ExitCode.IO, 'dr_decrypt', 'f' * 32,
                            sk=self.keygen('a', 'a2.sk'),
                            out=self.path('none.bin'))
        self.assertExitCode(ExitCode.IO, 'ta_challenge', 'e' * 32,
                            out=self.path('none.vt'))

    def test_corrupted_key_file(self):
        self.assertExitCode(ExitCode.FORMAT, 'dr_decrypt', 'f' * 32,
                            sk=self.write('bad.sk', b'LCSK garbage'),
                            out=self.path('none.bin'))
