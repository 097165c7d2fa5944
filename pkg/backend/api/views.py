import logging

from django.http import HttpResponse
from rest_framework import status, viewsets
from rest_framework.response import Response

from api.exceptions import BadRequestException
from api.parsers import OctetStreamParser
from api.serializers import StoreRecordSerializer
from cloud.store import BlockStore
from scheme.wire import decode_ctb

logger = logging.getLogger(__name__)


class BlockViewSet(viewsets.ViewSet):
    """Ciphertext blocks of one message; raw WireCTB bytes in and out."""

    parser_classes = (OctetStreamParser,)

    def get_store(self):
        return BlockStore()

    def list(self, request, message_id):
        records = self.get_store().list(message_id)
        return Response(StoreRecordSerializer(records, many=True).data)

    def retrieve(self, request, message_id, index):
        data = self.get_store().get(message_id, index)
        return HttpResponse(data, content_type='application/octet-stream')

    def update(self, request, message_id, index):
        data = request.data
        if not isinstance(data, bytes) or not data:
            raise BadRequestException(
                {'errors': 'Ожидается тело application/octet-stream'})
        ctb = decode_ctb(data)
        if ctb.header.message_id.hex() != message_id or ctb.index != index:
            raise BadRequestException(
                {'errors': 'Блок не соответствует адресу'})
        record = self.get_store().put(message_id, index, data)
        logger.info('block %d of %s accepted over HTTP', index, message_id)
        return Response(StoreRecordSerializer(record).data,
                        status=status.HTTP_201_CREATED)
