from dataclasses import dataclass

from core.exceptions import ArgumentError
from core.utils import xor_bytes


@dataclass(frozen=True)
class DataBlock:
    index: int
    payload: bytes


def block_length_for(message_length, n):
    if n < 1:
        raise ArgumentError('block count must be at least 1')
    return -(-message_length // n)


def split_message(message, n):
    length = block_length_for(len(message), n)
    padded = message.ljust(length * n, b'\x00')
    return [padded[i * length:(i + 1) * length] for i in range(n)]


def chain(segments):
    blocks = []
    previous = None
    for index, segment in enumerate(segments, start=1):
        payload = segment if previous is None else xor_bytes(previous, segment)
        blocks.append(DataBlock(index=index, payload=payload))
        previous = segment
    return blocks


def unchain(blocks):
    segments = []
    previous = None
    for block in sorted(blocks, key=lambda item: item.index):
        segment = (block.payload if previous is None
                   else xor_bytes(block.payload, previous))
        segments.append(segment)
        previous = segment
    return segments


def partition_message(message, n):
    """M -> M_1..M_n (zero-padded) -> DB_1 = M_1, DB_i = M_{i-1} xor M_i."""
    return chain(split_message(bytes(message), n))
