"""Readers and writers for trajectories and vote-event streams.

Formats:

* Trajectory CSV, header ``t_min,votes``.
* Event streams as JSON lines. Each stream starts with a header record
  ``{"story": {...} | null, "seed": ..., "horizon": ..., "promoted_at": ...}``
  followed by one ``{"t", "index", "via_friends"}`` record per vote. A file
  may hold several streams back to back.

Floats are written with ``repr`` so every file round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Union

from .exceptions import DomainError
from .params import StoryParams
from .solver import Trajectory, VoteEvent, VoteEventStream

PathLike = Union[str, Path]

TRAJECTORY_HEADER = ("t_min", "votes")


def trajectory_to_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    buf.write(",".join(TRAJECTORY_HEADER) + "\n")
    for t, v in traj:
        buf.write(f"{t!r},{v!r}\n")
    return buf.getvalue()


def trajectory_from_csv(text: str) -> Trajectory:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(c.strip() for c in rows[0]) != TRAJECTORY_HEADER:
        raise DomainError(f"trajectory CSV must start with header {','.join(TRAJECTORY_HEADER)}")
    body = [r for r in rows[1:] if r]
    return Trajectory([float(r[0]) for r in body], [float(r[1]) for r in body])


def write_trajectory(traj: Trajectory, path: PathLike) -> None:
    Path(path).write_text(trajectory_to_csv(traj))


def read_trajectory(path: PathLike) -> Trajectory:
    return trajectory_from_csv(Path(path).read_text())


def _header(stream: VoteEventStream) -> dict:
    return {
        "story": None if stream.story is None else stream.story.to_dict(),
        "seed": stream.seed,
        "horizon": stream.horizon,
        "promoted_at": stream.promoted_at,
    }


def stream_to_jsonl(stream: VoteEventStream) -> str:
    lines = [json.dumps(_header(stream))]
    lines.extend(json.dumps(ev.to_dict()) for ev in stream.events)
    return "\n".join(lines) + "\n"


def streams_from_jsonl(text: str) -> list[VoteEventStream]:
    streams = []
    header = None
    events: list[VoteEvent] = []

    def flush():
        if header is not None:
            story = header.get("story")
            streams.append(VoteEventStream(
                story=None if story is None else StoryParams.from_dict(story),
                events=events,
                horizon=float(header["horizon"]),
                promoted_at=header.get("promoted_at"),
                seed=header.get("seed"),
            ))

    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        rec = json.loads(line)
        if "horizon" in rec:
            flush()
            header, events = rec, []
        elif header is None:
            raise DomainError(f"line {lineno}: event record before any header")
        else:
            events.append(VoteEvent(float(rec["t"]), int(rec["index"]), bool(rec["via_friends"])))
    flush()
    if not streams:
        raise DomainError("no event streams found")
    return streams


def write_streams(streams: Iterable[VoteEventStream], path: PathLike) -> None:
    Path(path).write_text("".join(stream_to_jsonl(s) for s in streams))


def read_streams(path: PathLike) -> list[VoteEventStream]:
    """Read every stream from a JSON-lines file or a directory of them."""
    path = Path(path)
    if path.is_dir():
        out = []
        for f in sorted(path.glob("*.jsonl")):
            out.extend(streams_from_jsonl(f.read_text()))
        if not out:
            raise DomainError(f"no .jsonl streams in {path}")
        return out
    return streams_from_jsonl(path.read_text())


def read_stream(path: PathLike) -> VoteEventStream:
    streams = read_streams(path)
    if len(streams) != 1:
        raise DomainError(f"{path} holds {len(streams)} streams, expected one")
    return streams[0]


def dump_json(obj, path: PathLike | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
