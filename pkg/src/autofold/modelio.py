"""Model files.

Binary layout: the 8-byte magic ``AUTOFOLD``, a little-endian uint32 version,
then sections of ``tag (4 bytes) | payload length (uint64) | payload``.
Project and file topics are stored sparsely (items with a non-zero
accumulated count); smoothing restores the rest when the model is loaded.
"""

from __future__ import annotations

import io
import json
import struct
from pathlib import Path

import numpy as np

from .tokens import Vocabulary
from .topicmodel import Hyperparams, K, TrainedModel

MAGIC = b"AUTOFOLD"
VERSION = 1
TEXT_HEADER = "autofold-model"


class ModelFormatError(ValueError):
    pass


def _section(tag: bytes, payload: bytes) -> bytes:
    return tag + struct.pack("<Q", len(payload)) + payload


def _i64(a) -> bytes:
    return np.ascontiguousarray(a, dtype="<i8").tobytes()


def dumps(model: TrainedModel) -> bytes:
    meta = dict(model.metadata)
    meta["n_samples"] = model.n_samples
    meta["topic_names"] = model.topic_names
    topics = io.BytesIO()
    for items, counts in zip(model.topic_items, model.topic_counts):
        topics.write(struct.pack("<Q", len(items)))
        topics.write(_i64(items))
        topics.write(_i64(counts))
    out = io.BytesIO()
    out.write(MAGIC)
    out.write(struct.pack("<I", VERSION))
    out.write(_section(b"META", json.dumps(meta, sort_keys=True).encode()))
    out.write(_section(b"VOCB", json.dumps(model.vocabulary.items).encode()))
    out.write(_section(b"HYPR", np.concatenate([model.hyper.alpha_m, model.hyper.beta]).astype("<f8").tobytes()))
    out.write(_section(b"KIND", _i64(model.topic_kind)))
    out.write(_section(b"TOPC", topics.getvalue()))
    out.write(_section(b"SLOT", _i64(model.slot_usage)))
    return out.getvalue()


def loads(data: bytes) -> TrainedModel:
    if not data.startswith(MAGIC):
        raise ModelFormatError("not an autofold model file")
    if len(data) < len(MAGIC) + 4:
        raise ModelFormatError("truncated header")
    (version,) = struct.unpack_from("<I", data, len(MAGIC))
    if version != VERSION:
        raise ModelFormatError(f"unsupported model version {version}")
    pos = len(MAGIC) + 4
    sections: dict[bytes, bytes] = {}
    while pos < len(data):
        if pos + 12 > len(data):
            raise ModelFormatError("truncated section header")
        tag = data[pos:pos + 4]
        (length,) = struct.unpack_from("<Q", data, pos + 4)
        pos += 12
        if pos + length > len(data):
            raise ModelFormatError(f"truncated section {tag!r}")
        sections[tag] = data[pos:pos + length]
        pos += length
    missing = {b"META", b"VOCB", b"HYPR", b"KIND", b"TOPC", b"SLOT"} - sections.keys()
    if missing:
        raise ModelFormatError(f"missing sections {sorted(missing)}")

    meta = json.loads(sections[b"META"])
    vocab = Vocabulary(json.loads(sections[b"VOCB"]))
    hyp = np.frombuffer(sections[b"HYPR"], dtype="<f8").astype(np.float64)
    kinds = np.frombuffer(sections[b"KIND"], dtype="<i8").astype(np.int64)
    blob = sections[b"TOPC"]
    items, counts = [], []
    off = 0
    for _ in range(len(kinds)):
        (n,) = struct.unpack_from("<Q", blob, off)
        off += 8
        items.append(np.frombuffer(blob, dtype="<i8", count=n, offset=off).astype(np.int64))
        off += 8 * n
        counts.append(np.frombuffer(blob, dtype="<i8", count=n, offset=off).astype(np.int64))
        off += 8 * n
    slots = np.frombuffer(sections[b"SLOT"], dtype="<i8").astype(np.int64).reshape(-1, K)
    n_samples = meta.pop("n_samples")
    names = meta.pop("topic_names")
    return TrainedModel(
        vocabulary=vocab,
        hyper=Hyperparams(hyp[:K], hyp[K:]),
        topic_names=names,
        topic_kind=kinds,
        topic_items=items,
        topic_counts=counts,
        n_samples=n_samples,
        slot_usage=slots,
        metadata=meta,
    )


def save(model: TrainedModel, path: str | Path) -> None:
    Path(path).write_bytes(dumps(model))


def load(path: str | Path) -> TrainedModel:
    return loads(Path(path).read_bytes())


def export_text(model: TrainedModel) -> str:
    """Line-oriented dump for diffing; ``import_text`` reverses it exactly."""
    lines = [f"{TEXT_HEADER} {VERSION}"]
    lines.append("meta " + json.dumps(model.metadata, sort_keys=True))
    lines.append(f"samples {model.n_samples}")
    lines.append("alpha_m " + " ".join(repr(float(x)) for x in model.hyper.alpha_m))
    lines.append("beta " + " ".join(repr(float(x)) for x in model.hyper.beta))
    for i, item in enumerate(model.vocabulary.items):
        lines.append(f"item {i} {json.dumps(item)} " + " ".join(str(int(x)) for x in model.slot_usage[i]))
    for name, kind, items, counts in zip(
        model.topic_names, model.topic_kind, model.topic_items, model.topic_counts
    ):
        entries = " ".join(f"{int(t)}:{int(c)}" for t, c in zip(items, counts))
        lines.append(f"topic {int(kind)} {json.dumps(name)} {entries}".rstrip())
    return "\n".join(lines) + "\n"


def import_text(text: str) -> TrainedModel:
    lines = text.splitlines()
    head = lines[0].split()
    if head != [TEXT_HEADER, str(VERSION)]:
        raise ModelFormatError("not an autofold text export")
    meta: dict = {}
    n_samples = 0
    alpha = beta = None
    items: list[str] = []
    slots: list[list[int]] = []
    names, kinds, t_items, t_counts = [], [], [], []
    decoder = json.JSONDecoder()
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key == "meta":
            meta = json.loads(rest)
        elif key == "samples":
            n_samples = int(rest)
        elif key == "alpha_m":
            alpha = [float(x) for x in rest.split()]
        elif key == "beta":
            beta = [float(x) for x in rest.split()]
        elif key == "item":
            _, rest = rest.split(" ", 1)
            item, end = decoder.raw_decode(rest)
            items.append(item)
            slots.append([int(x) for x in rest[end:].split()])
        elif key == "topic":
            kind, rest = rest.split(" ", 1)
            name, end = decoder.raw_decode(rest)
            pairs = [p.split(":") for p in rest[end:].split()]
            names.append(name)
            kinds.append(int(kind))
            t_items.append(np.array([int(a) for a, _ in pairs], dtype=np.int64))
            t_counts.append(np.array([int(b) for _, b in pairs], dtype=np.int64))
    return TrainedModel(
        vocabulary=Vocabulary(items),
        hyper=Hyperparams(alpha, beta),
        topic_names=names,
        topic_kind=np.array(kinds, dtype=np.int64),
        topic_items=t_items,
        topic_counts=t_counts,
        n_samples=n_samples,
        slot_usage=np.array(slots, dtype=np.int64).reshape(-1, K),
        metadata=meta,
    )
