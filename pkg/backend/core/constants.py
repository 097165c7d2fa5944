from enum import IntEnum


class Limits(IntEnum):
    WIRE_VERSION = 1
    KEY_FILE_VERSION = 1
    MESSAGE_ID_LENGTH = 16


class ExitCode(IntEnum):
    OK = 0
    POLICY = 2
    IO = 3
    FORMAT = 4


class WireFlags(IntEnum):
    HAS_COMMITMENT = 0x01
    HAS_SENTINEL_SEC = 0x02


WIRE_MAGIC = b'LCWS'

KEY_FILE_MAGIC = {
    'public': b'LCPK',
    'master': b'LCMK',
    'context': b'LCEC',
    'secret': b'LCSK',
    'challenge': b'LCVT',
}

HASH_DOMAINS = (b'Hv', b'Hatt')

SCHEDULE_COLUMNS = (
    'block', 'enc_start', 'enc_end', 'tx_start', 'tx_end',
    'dec_start', 'dec_end',
)

BENCH_COLUMNS = (
    'size', 'blocks',
    'enc_sequential', 'enc_pipelined', 'enc_delta',
    'dec_sequential', 'dec_pipelined', 'dec_delta',
    'enc_elapsed', 'dec_elapsed',
)

KEY_FILE_NAMES = {
    'public': 'public.key',
    'master': 'master.key',
    'context': 'context.key',
}
