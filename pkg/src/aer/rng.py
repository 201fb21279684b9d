"""Seeded splitmix64 byte stream.

Deterministic and trivially portable; not a cryptographic generator. Every
draw (bytes, bounded ints) is taken from one little-endian byte stream so
that byte-level consumption is reproducible across implementations.
"""

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class SeededRng:
    def __init__(self, seed: int = 0) -> None:
        self.state = seed & _MASK64
        self._buf = b""

    def next_u64(self) -> int:
        """Raw generator output; bypasses the byte buffer."""
        self.state = (self.state + GOLDEN_GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def read(self, n: int) -> bytes:
        """Next ``n`` bytes of the stream."""
        need = n - len(self._buf)
        if need > 0:
            words = -(-need // 8)
            chunks = [self.next_u64().to_bytes(8, "little") for _ in range(words)]
            self._buf += b"".join(chunks)
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def below(self, bound: int) -> int:
        """Uniform int in ``[0, bound)`` by rejection on 8-byte LE words."""
        if bound < 1:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            v = int.from_bytes(self.read(8), "little")
            if v < limit:
                return v % bound
