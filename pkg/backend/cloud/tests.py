import os
import shutil
import tempfile

from django.test import SimpleTestCase, override_settings

from cloud.store import BlockStore
from core.exceptions import ArgumentError, ObjectNotFound

MESSAGE_ID = '0123456789abcdef0123456789abcdef'


class BlockStoreTests(SimpleTestCase):

    def setUp(self):
        self.location = tempfile.mkdtemp()
        self.store = BlockStore(self.location)

    def tearDown(self):
        shutil.rmtree(self.location, ignore_errors=True)

    def test_put_then_get(self):
        data = os.urandom(300)
        record = self.store.put(MESSAGE_ID, 1, data)
        self.assertEqual(self.store.get(MESSAGE_ID, 1), data)
        self.assertEqual(record.size, 300)
        self.assertEqual(record.object_id, f'{MESSAGE_ID}/1')
        self.assertIsNotNone(record.uploaded_at)

    def test_unknown_objects(self):
        with self.assertRaises(ObjectNotFound):
            self.store.get(MESSAGE_ID, 1)
        with self.assertRaises(ObjectNotFound):
            self.store.list(MESSAGE_ID)
        self.store.put(MESSAGE_ID, 1, b'x')
        with self.assertRaises(ObjectNotFound):
            self.store.get(MESSAGE_ID, 2)

    def test_list_in_index_order(self):
        for index in (10, 3, 1, 2, 9, 4, 8, 5, 7, 6):
            self.store.put(MESSAGE_ID, index, bytes([index]))
        records = self.store.list(MESSAGE_ID)
        self.assertEqual([record.index for record in records],
                         list(range(1, 11)))
        self.assertEqual(self.store.download(MESSAGE_ID),
                         [bytes([index]) for index in range(1, 11)])

    def test_overwrite_replaces_atomically(self):
        self.store.put(MESSAGE_ID, 1, b'first')
        self.store.put(MESSAGE_ID, 1, b'second')
        self.assertEqual(self.store.get(MESSAGE_ID, 1), b'second')
        leftovers = os.listdir(os.path.join(self.location, MESSAGE_ID))
        self.assertEqual(leftovers, ['000001.ctb'])

    def test_malformed_addresses(self):
        with self.assertRaises(ArgumentError):
            self.store.put('../escape', 1, b'x')
        with self.assertRaises(ArgumentError):
            self.store.put(MESSAGE_ID.upper(), 1, b'x')
        with self.assertRaises(ArgumentError):
            self.store.get(MESSAGE_ID, 0)

    def test_default_location_from_settings(self):
        with override_settings(CLOUD_STORE_DIR=self.location):
            store = BlockStore()
        store.put(MESSAGE_ID, 1, b'abc')
        self.assertTrue(os.path.exists(
            os.path.join(self.location, MESSAGE_ID, '000001.ctb')))
