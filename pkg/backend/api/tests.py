import shutil
import tempfile

from django.test import SimpleTestCase, override_settings
from rest_framework import status
from rest_framework.test import APIClient

from scheme.tests.fixtures import SchemeFixture
from scheme.wire import encode_ctb

OCTET_STREAM = 'application/octet-stream'


class BlockApiTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        fixture = SchemeFixture(seed=81)
        encryptor, ctbs = fixture.encrypt('(a AND b)', b'api payload')
        cls.message_id = encryptor.message_id
        cls.blocks = [encode_ctb(ctb) for ctb in ctbs]

    def setUp(self):
        self.location = tempfile.mkdtemp()
        self.settings_override = override_settings(
            CLOUD_STORE_DIR=self.location)
        self.settings_override.enable()
        self.client = APIClient()

    def tearDown(self):
        self.settings_override.disable()
        shutil.rmtree(self.location, ignore_errors=True)

    def url(self, index=None, message_id=None):
        base = f'/api/messages/{message_id or self.message_id}/blocks/'
        return base if index is None else f'{base}{index}/'

    def upload(self, index, data):
        return self.client.put(self.url(index), data=data,
                               content_type=OCTET_STREAM)

    def test_upload_and_download(self):
        response = self.upload(1, self.blocks[0])
        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.data['index'], 1)
        self.assertEqual(response.data['size'], len(self.blocks[0]))
        response = self.client.get(self.url(1))
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.content, self.blocks[0])
        self.assertEqual(response['Content-Type'], OCTET_STREAM)

    def test_listing(self):
        for index, data in enumerate(self.blocks, start=1):
            self.upload(index, data)
        response = self.client.get(self.url())
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual([item['index'] for item in response.json()],
                         [1, 2])
        self.assertEqual(response.json()[0]['message_id'], self.message_id)

    def test_rejects_garbage(self):
        response = self.upload(1, b'not a ciphertext block')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn('errors', response.json())

    def test_rejects_misaddressed_block(self):
        response = self.upload(2, self.blocks[0])
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        response = self.client.put(self.url(1, message_id='a' * 32),
                                   data=self.blocks[0],
                                   content_type=OCTET_STREAM)
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_unknown_objects(self):
        self.assertEqual(self.client.get(self.url(1)).status_code,
                         status.HTTP_404_NOT_FOUND)
        self.assertEqual(self.client.get(self.url()).status_code,
                         status.HTTP_404_NOT_FOUND)

    def test_malformed_message_id(self):
        response = self.client.get(self.url(1, message_id='xyz'))
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
