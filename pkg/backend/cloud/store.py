"""File-backed store of the semi-trusted cloud server.

Objects are WireCTB bytes addressed by (message id, block index) and
laid out as ``<root>/<message id>/<index>.ctb``.  The store only ever
sees ciphertext.
"""
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from datetime import datetime

from django.conf import settings
from django.core.files.base import ContentFile
from django.core.files.storage import FileSystemStorage

from core.exceptions import ArgumentError, ObjectNotFound, StoreError

logger = logging.getLogger(__name__)

MESSAGE_ID_RE = re.compile(r'^[0-9a-f]{32}$')
OBJECT_SUFFIX = '.ctb'


class AtomicFileSystemStorage(FileSystemStorage):
    """Writes go to a temporary file that replaces the target."""

    def get_available_name(self, name, max_length=None):
        return name

    def _save(self, name, content):
        full_path = self.path(name)
        directory = os.path.dirname(full_path)
        os.makedirs(directory, exist_ok=True)
        descriptor, temporary = tempfile.mkstemp(dir=directory,
                                                 prefix='.upload-')
        try:
            with os.fdopen(descriptor, 'wb') as f:
                for chunk in content.chunks():
                    f.write(chunk)
            if self.file_permissions_mode is not None:
                os.chmod(temporary, self.file_permissions_mode)
            os.replace(temporary, full_path)
        except BaseException:
            if os.path.exists(temporary):
                os.unlink(temporary)
            raise
        return name.replace('\\', '/')


@dataclass(frozen=True)
class StoreRecord:
    message_id: str
    index: int
    size: int
    uploaded_at: datetime

    @property
    def object_id(self):
        return f'{self.message_id}/{self.index}'


def check_message_id(message_id):
    if not isinstance(message_id, str) or not MESSAGE_ID_RE.match(
            message_id):
        raise ArgumentError(f'malformed message id {message_id!r}')
    return message_id


class BlockStore:

    def __init__(self, location=None):
        self.storage = AtomicFileSystemStorage(
            location=location or settings.CLOUD_STORE_DIR)

    @staticmethod
    def object_name(message_id, index):
        if index < 1:
            raise ArgumentError(f'block index {index} must be positive')
        return f'{check_message_id(message_id)}/{index:06d}{OBJECT_SUFFIX}'

    def put(self, message_id, index, data):
        name = self.object_name(message_id, index)
        try:
            self.storage.save(name, ContentFile(bytes(data)))
        except OSError as exc:
            raise StoreError(f'cannot store {name}: {exc}') from exc
        logger.info('stored block %d of %s (%d bytes)', index, message_id,
                    len(data))
        return self.record(message_id, index)

    def get(self, message_id, index):
        name = self.object_name(message_id, index)
        if not self.storage.exists(name):
            raise ObjectNotFound(f'no block {index} for message {message_id}')
        try:
            with self.storage.open(name, 'rb') as f:
                return f.read()
        except OSError as exc:
            raise StoreError(f'cannot read {name}: {exc}') from exc

    def record(self, message_id, index):
        name = self.object_name(message_id, index)
        if not self.storage.exists(name):
            raise ObjectNotFound(f'no block {index} for message {message_id}')
        return StoreRecord(
            message_id=message_id,
            index=index,
            size=self.storage.size(name),
            uploaded_at=self.storage.get_modified_time(name),
        )

    def list(self, message_id):
        """Records of a message in index order."""
        check_message_id(message_id)
        if not self.storage.exists(message_id):
            raise ObjectNotFound(f'unknown message {message_id}')
        _, files = self.storage.listdir(message_id)
        indices = sorted(
            int(name[:-len(OBJECT_SUFFIX)]) for name in files
            if name.endswith(OBJECT_SUFFIX)
            and name[:-len(OBJECT_SUFFIX)].isdigit()
        )
        if not indices:
            raise ObjectNotFound(f'unknown message {message_id}')
        return [self.record(message_id, index) for index in indices]

    def download(self, message_id):
        return [self.get(message_id, record.index)
                for record in self.list(message_id)]
