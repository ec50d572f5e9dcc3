"""Storage-strategy benchmark: large objects vs inline byte arrays.

Runs store → fetch → delete over seeded payloads, checksums every fetch
(correctness before speed — one mismatch aborts the run), and leaves the
database exactly as it found it.  Payloads are valid PNGs padded to the
requested byte size with a private ancillary chunk, so they pass the same
image validation real photos do.
"""

from __future__ import annotations

import datetime
import hashlib
import io
import json
import math
import platform
import random
import statistics
import struct
import threading
import time
import zlib
from dataclasses import dataclass, field
from typing import Iterable

from PIL import Image

from .config import ConnectionConfig, StorageStrategy
from .db import connect
from .errors import BenchmarkError, ValidationError
from .imaging import probe
from .model import EMP_TABLE
from .records import create_record, delete_record
from .model import EmployeeRecord
from . import schema, storage

OPS = ("store", "fetch", "delete")
# id range reserved for benchmark rows; removed at teardown
_BENCH_ID_BASE = 900_000_000


@dataclass
class WorkloadSpec:
    strategy: StorageStrategy
    n_images: int
    size_bytes: list[int]
    concurrency: int = 1
    seed: int = 0
    warmup: int = 0

    def validate(self) -> "WorkloadSpec":
        if self.n_images <= 0:
            raise ValidationError("n_images", "n_images must be positive")
        if not self.size_bytes or any(s <= 0 for s in self.size_bytes):
            raise ValidationError("size_bytes", "size_bytes must be positive")
        if not 1 <= self.concurrency <= 64:
            raise ValidationError("concurrency", "concurrency must be in 1..64")
        if self.warmup < 0 or self.warmup >= self.n_images:
            raise ValidationError("warmup", "warmup must be below n_images")
        return self

    @classmethod
    def from_file(cls, path) -> "WorkloadSpec":
        raw = json.loads(open(path, encoding="utf-8").read())
        raw["strategy"] = StorageStrategy(raw["strategy"])
        return cls(**raw).validate()


@dataclass
class Stratum:
    count: int
    mean_ms: float
    median_ms: float
    p95_ms: float
    throughput_mib_s: float


@dataclass
class BenchmarkReport:
    strategy: StorageStrategy
    environment: str
    verified: bool
    total_bytes: int
    strata: dict[tuple[int, str], Stratum] = field(default_factory=dict)

    def rows(self) -> list[tuple]:
        out = []
        for (size, op) in sorted(self.strata):
            s = self.strata[(size, op)]
            out.append((self.strategy.value, size, op, s.count,
                        s.mean_ms, s.median_ms, s.p95_ms, s.throughput_mib_s))
        return out


def _png_chunk(kind: bytes, payload: bytes) -> bytes:
    return (struct.pack(">I", len(payload)) + kind + payload
            + struct.pack(">I", zlib.crc32(kind + payload)))


def make_payload(seed: int, index: int, size: int) -> bytes:
    """Valid PNG of exactly `size` bytes (when size allows), deterministic
    in (seed, index, size).  Random noise pixels defeat compression; a
    private ancillary chunk pads to the exact target."""
    rng = random.Random(f"{seed}:{index}:{size}")   # str seed: stable across processes
    side = 24
    img = Image.new("RGB", (side, side))
    img.putdata([(rng.randrange(256), rng.randrange(256), rng.randrange(256))
                 for _ in range(side * side)])
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    base = buf.getvalue()
    pad = size - len(base) - 12
    if pad <= 0:
        return base
    filler = rng.randbytes(pad)
    # insert the pad chunk just before IEND
    iend = base.rindex(b"IEND") - 4
    return base[:iend] + _png_chunk(b"prVt", filler) + base[iend:]


def _percentile95(samples: list[float]) -> float:
    ordered = sorted(samples)
    idx = max(0, min(len(ordered) - 1, math.ceil(0.95 * len(ordered)) - 1))
    return ordered[idx]


def run_benchmark(config: ConnectionConfig, spec: WorkloadSpec) -> BenchmarkReport:
    spec.validate()
    report_check = schema.verify_schema(config, spec.strategy)
    if not report_check.ok:
        raise BenchmarkError(
            f"database not migrated for {spec.strategy.value}: missing {report_check.missing_objects}"
        )

    with connect(config) as admin:
        before_rows = admin.query(f"SELECT COUNT(*) FROM {EMP_TABLE}")[0][0]
        before_objects = (admin.lo_list()
                          if spec.strategy == StorageStrategy.LARGE_OBJECT else set())

    samples: dict[tuple[int, str], list[float]] = {
        (size, op): [] for size in spec.size_bytes for op in OPS
    }
    lock = threading.Lock()
    failures: list[str] = []
    total_bytes = 0

    def worker(wid: int) -> None:
        nonlocal total_bytes
        row_id = _BENCH_ID_BASE + wid
        rec = EmployeeRecord(
            emp_id=row_id, first_name="Bench", last_name=f"Worker{wid}",
            emp_contact_no="0", date_of_birth=datetime.date(1990, 1, 1),
            dept="Bench", date_of_joining=datetime.date(2020, 1, 1),
            highest_education="NA", designation="NA", employment_type="NA",
            gender="NA", blood_group="O+", years_of_experience=0,
        )
        with connect(config) as db:
            create_record(db, EMP_TABLE, rec)
            try:
                for size in spec.size_bytes:
                    for i in range(wid, spec.n_images, spec.concurrency):
                        payload = make_payload(spec.seed, i, size)
                        digest = hashlib.sha256(payload).hexdigest()
                        blob = probe(payload)
                        discard = i < spec.warmup * spec.concurrency

                        t0 = time.monotonic()
                        storage.store_photo(db, spec.strategy, EMP_TABLE, row_id, blob,
                                            max_bytes=config.max_photo_bytes)
                        t1 = time.monotonic()
                        fetched = storage.fetch_photo(db, spec.strategy, EMP_TABLE, row_id)
                        t2 = time.monotonic()
                        if fetched is None or hashlib.sha256(fetched.data).hexdigest() != digest:
                            with lock:
                                failures.append(f"checksum mismatch at size {size} index {i}")
                            return
                        storage.delete_photo(db, spec.strategy, EMP_TABLE, row_id)
                        t3 = time.monotonic()

                        if not discard:
                            with lock:
                                samples[(size, "store")].append((t1 - t0) * 1000)
                                samples[(size, "fetch")].append((t2 - t1) * 1000)
                                samples[(size, "delete")].append((t3 - t2) * 1000)
                                total_bytes += len(payload)
            finally:
                delete_record(db, EMP_TABLE, row_id)

    threads = [threading.Thread(target=worker, args=(w,)) for w in range(spec.concurrency)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    with connect(config) as admin:
        after_rows = admin.query(f"SELECT COUNT(*) FROM {EMP_TABLE}")[0][0]
        after_objects = (admin.lo_list()
                         if spec.strategy == StorageStrategy.LARGE_OBJECT else set())

    if failures:
        raise BenchmarkError("; ".join(failures))
    if after_rows != before_rows or after_objects != before_objects:
        raise BenchmarkError("benchmark left residue in the database")

    report = BenchmarkReport(
        strategy=spec.strategy,
        environment=f"{platform.platform()} python {platform.python_version()} "
                    f"engine {config.engine}",
        verified=True,
        total_bytes=total_bytes,
    )
    for (size, op), values in samples.items():
        if not values:
            continue
        total_s = sum(values) / 1000
        mib = size * len(values) / (1024 * 1024)
        report.strata[(size, op)] = Stratum(
            count=len(values),
            mean_ms=statistics.fmean(values),
            median_ms=statistics.median(values),
            p95_ms=_percentile95(values),
            throughput_mib_s=mib / total_s if total_s > 0 else 0.0,
        )
    return report


CSV_HEADER = "strategy,size_bytes,op,count,mean_ms,median_ms,p95_ms,throughput_mib_s"


def report_to_csv(report: BenchmarkReport) -> str:
    lines = [CSV_HEADER]
    for row in report.rows():
        strategy, size, op, count, mean, median, p95, tput = row
        lines.append(f"{strategy},{size},{op},{count},"
                     f"{mean:.4f},{median:.4f},{p95:.4f},{tput:.4f}")
    return "\n".join(lines) + "\n"


def summary_table(report: BenchmarkReport) -> str:
    lines = [
        f"strategy: {report.strategy.value}   verified: {report.verified}",
        f"environment: {report.environment}",
        f"{'size':>10} {'op':>7} {'n':>5} {'mean ms':>10} {'median ms':>10}"
        f" {'p95 ms':>10} {'MiB/s':>9}",
    ]
    for _, size, op, count, mean, median, p95, tput in report.rows():
        lines.append(f"{size:>10} {op:>7} {count:>5} {mean:>10.3f} {median:>10.3f}"
                     f" {p95:>10.3f} {tput:>9.2f}")
    return "\n".join(lines)
