import logging

from rest_framework import status
from rest_framework.exceptions import APIException
from rest_framework.views import exception_handler

from core.exceptions import (ArgumentError, FormatError, ObjectNotFound,
                             StoreError)

logger = logging.getLogger(__name__)


class BadRequestException(APIException):
    status_code = status.HTTP_400_BAD_REQUEST


class NotFoundException(APIException):
    status_code = status.HTTP_404_NOT_FOUND


class StoreUnavailableException(APIException):
    status_code = status.HTTP_503_SERVICE_UNAVAILABLE


def outsourcing_exception_handler(exc, context):
    if isinstance(exc, (FormatError, ArgumentError)):
        exc = BadRequestException({'errors': str(exc)})
    elif isinstance(exc, ObjectNotFound):
        exc = NotFoundException({'errors': str(exc)})
    elif isinstance(exc, StoreError):
        logger.error('store failure: %s', exc)
        exc = StoreUnavailableException({'errors': str(exc)})
    return exception_handler(exc, context)
