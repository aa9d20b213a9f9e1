"""Writes the golden corpora and containers under tests/data.

Encoders here are written straight from the code definitions, independent of
the C++ implementation.
"""
import random
import struct
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"


def omega(n):
    code = "0"
    while n > 1:
        b = bin(n)[2:]
        code = b + code
        n = len(b) - 1
    return code


def gamma(n):
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


def delta(n):
    b = bin(n)[2:]
    return gamma(len(b)) + b[1:]


CODES = {"omega": (1, omega), "gamma": (2, gamma), "delta": (3, delta)}


def container(codec, bits):
    payload = bits + "0" * (-len(bits) % 8)
    body = bytes(int(payload[i:i + 8], 2) for i in range(0, len(payload), 8))
    return b"OMGA" + bytes([1, codec]) + struct.pack("<Q", len(bits)) + body


def corpora():
    rng = random.Random(20240611)
    yield "small", list(range(1, 65))
    yield "powers", [v for k in range(1, 130) for v in (2**k - 1, 2**k, 2**k + 1)]
    yield "random", [rng.randrange(1, 2 ** rng.randrange(1, 257)) + 1 for _ in range(300)]


def main():
    DATA.mkdir(exist_ok=True)
    for name, values in corpora():
        (DATA / f"corpus_{name}.txt").write_text("".join(f"{v}\n" for v in values))
        for code, (codec, enc) in CODES.items():
            bits = "".join(enc(v) for v in values)
            (DATA / f"corpus_{name}.{code}.omga").write_bytes(container(codec, bits))


if __name__ == "__main__":
    main()
