"""Deterministic seed derivation shared by feature maps and the benchmark."""

import hashlib

import numpy as np


def derive_seed(*parts):
    """Collapse ints/strings into a reproducible uint64 seed.

    Same parts always give the same seed, on any platform.  Each part is
    type-tagged and length-prefixed before hashing, so distinct part
    tuples cannot alias (e.g. (x,) vs (x, 0), or ("a",) vs (97,)).
    """
    blob = bytearray()
    for part in parts:
        if isinstance(part, str):
            data = part.encode("utf-8")
            tag = b"s"
        elif isinstance(part, (int, np.integer)):
            if part < 0:
                raise ValueError(f"seed parts must be nonnegative, got {part}")
            value = int(part)
            data = value.to_bytes(max(1, (value.bit_length() + 7) // 8), "little")
            tag = b"i"
        else:
            raise TypeError(f"seed parts must be int or str, got {type(part).__name__}")
        blob += tag + len(data).to_bytes(8, "little") + data
    digest = hashlib.sha256(bytes(blob)).digest()
    return int.from_bytes(digest[:8], "little")
