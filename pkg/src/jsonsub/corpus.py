"""Batch subschema checks over two directories of schema versions.

Files with the same relative path under ``old`` and ``new`` form a pair;
byte-identical pairs are skipped.  Each pair yields one JSON Lines record and
the file ends with a summary record carrying aggregate counts.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .json_model import JsonModelError, load_file
from .regex.parser import UnsupportedPattern
from .schema_model import InvalidSchema, RefError, file_uri
from .subtype import DoesNotHold, Undecidable, check

__all__ = ["PairRecord", "CorpusReport", "find_pairs", "check_pair", "run_corpus", "write_report"]

INPUT_ERROR = "InputError"


@dataclass
class PairRecord:
    lhs: str
    rhs: str
    direction: str
    verdict: str
    tag: str | None = None
    rule: str | None = None
    path: str | None = None
    detail: str | None = None
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {"type": "pair", **asdict(self)}


@dataclass
class CorpusReport:
    records: list[PairRecord] = field(default_factory=list)

    @property
    def verdicts(self) -> Counter:
        return Counter(r.verdict for r in self.records)

    @property
    def tags(self) -> Counter:
        return Counter(r.tag for r in self.records if r.tag)

    def over_budget(self, seconds: float | None) -> list[PairRecord]:
        if seconds is None:
            return []
        return [r for r in self.records if r.elapsed_ms > seconds * 1000 or
                (r.tag == "CapacityLimit" and "time" in (r.detail or ""))]

    def summary(self, time_budget: float | None = None) -> dict:
        return {
            "type": "summary",
            "pairs": len(self.records),
            "verdicts": dict(sorted(self.verdicts.items())),
            "tags": dict(sorted(self.tags.items())),
            "over_time_budget": [r.lhs for r in self.over_budget(time_budget)],
        }


def find_pairs(old_dir, new_dir, pattern: str = "*.json") -> list[tuple[Path, Path]]:
    """Same-named files under both directories whose bytes differ, sorted by path."""
    old_dir, new_dir = Path(old_dir), Path(new_dir)
    pairs = []
    for lhs in sorted(old_dir.rglob(pattern)):
        rel = lhs.relative_to(old_dir)
        rhs = new_dir / rel
        if rhs.is_file() and lhs.read_bytes() != rhs.read_bytes():
            pairs.append((lhs, rhs))
    return pairs


def check_pair(lhs: Path, rhs: Path, direction: str = "sub",
               time_budget: float | None = None) -> PairRecord:
    rec = PairRecord(str(lhs), str(rhs), direction, INPUT_ERROR)
    start = time.perf_counter()
    try:
        a, b = load_file(lhs), load_file(rhs)
        v = check(a, b, direction, time_budget=time_budget,
                  lhs_base=file_uri(lhs), rhs_base=file_uri(rhs))
        rec.verdict = v.kind
        if isinstance(v, DoesNotHold):
            rec.rule, rec.path = v.rule, v.path or "/"
        elif isinstance(v, Undecidable):
            rec.tag, rec.detail = v.tag, v.detail
    except (JsonModelError, OSError, UnicodeDecodeError) as exc:
        rec.tag, rec.detail = "InvalidJSON", str(exc)
    except InvalidSchema as exc:
        rec.tag, rec.detail = "InvalidSchema", str(exc)
    except RefError as exc:
        rec.tag, rec.detail = "RefTargetMissing", str(exc)
    except UnsupportedPattern as exc:
        rec.verdict, rec.tag, rec.detail = "Undecidable", "NonRegularPattern", str(exc)
    except Exception as exc:  # noqa: BLE001 - one bad pair must not stop the run
        rec.verdict, rec.tag, rec.detail = "Error", type(exc).__name__, str(exc)
    rec.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return rec


def _check_args(args):
    return check_pair(*args)


def run_corpus(old_dir, new_dir, direction: str = "sub", time_budget: float | None = None,
               jobs: int = 1) -> CorpusReport:
    pairs = find_pairs(old_dir, new_dir)
    work = [(a, b, direction, time_budget) for a, b in pairs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_check_args, work, chunksize=4))
    else:
        records = [_check_args(w) for w in work]
    return CorpusReport(records)


def write_report(report: CorpusReport, out, time_budget: float | None = None) -> None:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        for r in report.records:
            fh.write(json.dumps(r.to_json(), sort_keys=True) + "\n")
        fh.write(json.dumps(report.summary(time_budget), sort_keys=True) + "\n")
