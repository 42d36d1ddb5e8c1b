"""On-disk layout: byte packing into base symbols, shard files and the manifest."""

from __future__ import annotations

import json
import math
import zlib
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .bulk import symbol_dtype
from .construction import CodeParams, GeneratorMatrix, build_generator, make_params
from .errors import ManifestError
from .field import BINARY, BaseField, ExtField

FORMAT_VERSION = 1
MANIFEST_NAME = "manifest.json"


def shard_name(i: int) -> str:
    return f"shard_{i:03d}.bin"


def bits_per_symbol(base: BaseField) -> int:
    """Payload bits carried by one base symbol: every value below 2^bits is a field element."""
    return base.order.bit_length() - 1


def bytes_per_symbol(base: BaseField) -> int:
    return max(1, math.ceil((base.order - 1).bit_length() / 8))


def crc32(data: bytes) -> str:
    return f"{zlib.crc32(data) & 0xFFFFFFFF:08x}"


# -- packing -----------------------------------------------------------------


def bytes_to_symbols(data: bytes, base: BaseField) -> np.ndarray:
    """Little-endian bit stream of ``data`` cut into base symbols."""
    raw = np.frombuffer(data, dtype=np.uint8)
    bits = bits_per_symbol(base)
    if bits == 8:
        return raw.astype(np.int64)
    stream = np.unpackbits(raw, bitorder="little")
    pad = (-stream.size) % bits
    stream = np.concatenate([stream, np.zeros(pad, dtype=np.uint8)])
    weights = 1 << np.arange(bits, dtype=np.int64)
    return stream.reshape(-1, bits).astype(np.int64) @ weights


def symbols_to_bytes(symbols: np.ndarray, base: BaseField, length: int) -> bytes:
    symbols = np.asarray(symbols, dtype=np.int64).reshape(-1)
    bits = bits_per_symbol(base)
    if bits == 8:
        return symbols.astype(np.uint8).tobytes()[:length]
    stream = ((symbols[:, None] >> np.arange(bits)) & 1).astype(np.uint8).reshape(-1)
    stream = stream[: length * 8]
    return np.packbits(stream, bitorder="little").tobytes()[:length]


def encode_symbols(symbols: np.ndarray, base: BaseField) -> bytes:
    """Serialize base symbols little-endian, ``bytes_per_symbol`` bytes each."""
    width = bytes_per_symbol(base)
    symbols = np.asarray(symbols).reshape(-1)
    if width == 1:
        return symbols.astype(np.uint8).tobytes()
    if width in (2, 4, 8):
        return symbols.astype(f"<u{width}").tobytes()
    return _pack_wide(symbols, width)


def decode_symbols(payload: bytes, base: BaseField) -> np.ndarray:
    width = bytes_per_symbol(base)
    if width == 1:
        out = np.frombuffer(payload, dtype=np.uint8)
    elif width in (2, 4, 8):
        out = np.frombuffer(payload, dtype=f"<u{width}")
    else:
        b = np.frombuffer(payload, dtype=np.uint8).reshape(-1, width).astype(np.int64)
        out = b @ (1 << (8 * np.arange(width, dtype=np.int64)))
    out = out.astype(symbol_dtype(base) if base.kind == BINARY else np.int64)
    if out.size and int(out.max()) >= base.order:
        raise ManifestError("shard contains values outside the base field")
    return out


def _pack_wide(symbols, width):
    out = np.zeros((symbols.size, width), dtype=np.uint8)
    s = symbols.astype(np.int64)
    for b in range(width):
        out[:, b] = (s >> (8 * b)) & 0xFF
    return out.tobytes()


# -- manifest ----------------------------------------------------------------


@dataclass
class Manifest:
    params: dict
    field: dict
    alphas: list
    original_length: int
    stripe_count: int
    checksum: str
    shards: list = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    @classmethod
    def for_code(cls, gm: GeneratorMatrix, original_length: int, stripe_count: int, checksum: str) -> Manifest:
        p = gm.params
        return cls(
            params={"n": p.n, "k": p.k, "r": p.r, "delta": p.delta},
            field={"base": p.base.descriptor, "modulus": gm.field.modulus_text},
            alphas=list(p.alphas),
            original_length=original_length,
            stripe_count=stripe_count,
            checksum=checksum,
            shards=[shard_name(i) for i in range(p.n)],
        )

    def to_json(self) -> str:
        d = asdict(self)
        ordered = {key: d[key] for key in ("format_version", "params", "field", "alphas", "original_length", "stripe_count", "checksum", "shards")}
        return json.dumps(ordered, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Manifest:
        try:
            d = json.loads(text)
            m = cls(
                params=dict(d["params"]),
                field=dict(d["field"]),
                alphas=list(d["alphas"]),
                original_length=int(d["original_length"]),
                stripe_count=int(d["stripe_count"]),
                checksum=str(d["checksum"]),
                shards=list(d["shards"]),
                format_version=int(d["format_version"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"malformed manifest: {exc}") from exc
        if m.format_version != FORMAT_VERSION:
            raise ManifestError(f"unsupported manifest format_version {m.format_version}")
        return m

    def code(self) -> GeneratorMatrix:
        """Rebuild the generator matrix; parameters re-validate on the way."""
        p = self.params
        base = BaseField.parse(self.field["base"])
        params: CodeParams = make_params(p["n"], p["k"], p["r"], p["delta"], base, alphas=self.alphas)
        modulus = ExtField.parse(self.field["base"], self.field["modulus"]).modulus
        gm = build_generator(params, modulus=modulus)
        if len(self.shards) != params.n:
            raise ManifestError(f"manifest lists {len(self.shards)} shards, expected n={params.n}")
        capacity = self.stripe_count * params.k * gm.field.degree * bits_per_symbol(base)
        if capacity < 8 * self.original_length:
            raise ManifestError("stripe_count is too small for original_length")
        return gm

    def shard_bytes(self, gm: GeneratorMatrix) -> int:
        return self.stripe_count * gm.field.degree * bytes_per_symbol(gm.params.base)


def read_manifest(directory: Path) -> Manifest:
    path = Path(directory) / MANIFEST_NAME
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ManifestError(f"no manifest at {path}") from exc
    return Manifest.from_json(text)


def write_manifest(directory: Path, manifest: Manifest) -> Path:
    path = Path(directory) / MANIFEST_NAME
    path.write_text(manifest.to_json(), encoding="utf-8")
    return path
