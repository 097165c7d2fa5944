from core.constants import ExitCode


class OutsourcingError(Exception):
    exit_code = ExitCode.FORMAT


class FormatError(OutsourcingError):
    exit_code = ExitCode.FORMAT


class DecodeError(FormatError):
    pass


class PolicySyntaxError(FormatError):

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f'{message} (position {position})'
        super().__init__(message)


class ArgumentError(OutsourcingError):
    exit_code = ExitCode.FORMAT


class ThresholdError(ArgumentError):
    pass


class InternalStateError(OutsourcingError):
    exit_code = ExitCode.FORMAT


class AccessDenied(OutsourcingError):
    exit_code = ExitCode.POLICY

    def __init__(self, message='access policy not satisfied'):
        super().__init__(message)


class StoreError(OutsourcingError):
    exit_code = ExitCode.IO


class ObjectNotFound(StoreError):
    pass


class PipelineError(OutsourcingError):
    exit_code = ExitCode.IO

    def __init__(self, block_index, message):
        self.block_index = block_index
        super().__init__(f'block {block_index}: {message}')
