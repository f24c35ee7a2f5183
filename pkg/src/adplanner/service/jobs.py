"""Asynchronous job execution with live, append-only history.

Each job owns a Condition guarding its mutable fields; the runner
thread appends one history row per GA generation and notifies, and any
number of stream readers replay-then-follow off the same state. An
optional NDJSON journal records submissions, generations, and
terminal events so completed jobs survive a restart (interrupted ones
come back as failed).
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterator

from ..campaign import CampaignSpec, campaign_from_doc, campaign_to_doc
from ..ga import GenerationStat, OptimizationResult, optimize, result_from_doc, result_to_doc
from ..network import WebsiteNetwork
from ..overlap import OverlapMatrix

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"
TERMINAL = (DONE, FAILED)


def _stat_doc(stat: GenerationStat) -> dict[str, float]:
    return {
        "generation": stat.generation,
        "best_fitness": stat.best_fitness,
        "mean_fitness": stat.mean_fitness,
    }


class Job:
    """One optimization run. All mutable fields are guarded by ``condition``."""

    def __init__(self, job_id: str, spec: CampaignSpec):
        self.id = job_id
        self.spec = spec
        self.state = QUEUED
        self.history: list[GenerationStat] = []
        self.result: OptimizationResult | None = None
        self.error: str | None = None
        self.condition = threading.Condition()

    def snapshot(self) -> dict[str, Any]:
        """Full job record as a JSON-ready dict."""
        with self.condition:
            return {
                "job_id": self.id,
                "state": self.state,
                "spec": campaign_to_doc(self.spec),
                "history": [_stat_doc(s) for s in self.history],
                "result": None if self.result is None else result_to_doc(self.result),
                "error": self.error,
            }

    def events(self) -> Iterator[dict[str, Any]]:
        """Replay stored history, then follow live; ends with a done event.

        History can only grow until the state turns terminal, so once a
        terminal state is observed after a full flush the feed is
        complete.
        """
        sent = 0
        while True:
            with self.condition:
                self.condition.wait_for(
                    lambda: len(self.history) > sent or self.state in TERMINAL
                )
                chunk = list(self.history[sent:])
                state = self.state
                result = self.result
                error = self.error
            for stat in chunk:
                yield _stat_doc(stat)
            sent += len(chunk)
            if state in TERMINAL:
                if state == DONE and result is not None:
                    yield {"done": True, "result": result_to_doc(result)}
                else:
                    yield {"done": True, "error": error}
                return


class JobStore:
    """Registry plus bounded-concurrency runner for jobs."""

    def __init__(self, max_jobs: int | None = None, journal_path: str | Path | None = None):
        workers = max_jobs if max_jobs is not None else (os.cpu_count() or 2)
        if workers < 1:
            raise ValueError(f"max_jobs must be >= 1, got {workers}")
        self._executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="ga-job")
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()
        self._journal_path = Path(journal_path) if journal_path is not None else None
        self._journal_lock = threading.Lock()
        if self._journal_path is not None and self._journal_path.exists():
            self._replay(self._journal_path)

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def submit(
        self,
        spec: CampaignSpec,
        net: WebsiteNetwork,
        matrix_for: Callable[[], OverlapMatrix],
        feasible: set[str],
    ) -> Job:
        """Queue a run against a fixed network snapshot; returns immediately.

        ``matrix_for`` defers the (possibly expensive, memoized) overlap
        matrix to the worker thread, so submission never blocks on it.
        """
        job = Job(uuid.uuid4().hex, spec)
        # journal first so a job is never visible without its submitted line
        self._journal({"event": "submitted", "job_id": job.id, "spec": campaign_to_doc(spec)})
        with self._lock:
            self._jobs[job.id] = job
        self._executor.submit(self._run, job, net, matrix_for, feasible)
        return job

    def shutdown(self) -> None:
        self._executor.shutdown(wait=False, cancel_futures=True)

    def _run(
        self,
        job: Job,
        net: WebsiteNetwork,
        matrix_for: Callable[[], OverlapMatrix],
        feasible: set[str],
    ) -> None:
        with job.condition:
            job.state = RUNNING
            job.condition.notify_all()

        # Journal writes precede the in-memory publish throughout: once a
        # poller or stream can observe an event, its line is already on
        # disk, so a restart never demotes a job a client saw finish.
        def on_generation(stat: GenerationStat) -> None:
            self._journal({"event": "generation", "job_id": job.id, **_stat_doc(stat)})
            with job.condition:
                job.history.append(stat)
                job.condition.notify_all()

        try:
            result = optimize(net, matrix_for(), feasible, job.spec, progress=on_generation)
        except Exception as exc:
            try:
                self._journal({"event": "failed", "job_id": job.id, "error": str(exc)})
            finally:
                # publish even if the journal write blew up, else the job
                # wedges in running forever
                with job.condition:
                    job.state = FAILED
                    job.error = str(exc)
                    job.condition.notify_all()
            return
        try:
            self._journal({"event": "done", "job_id": job.id, "result": result_to_doc(result)})
        finally:
            with job.condition:
                job.result = result
                job.state = DONE
                job.condition.notify_all()

    def _journal(self, record: dict[str, Any]) -> None:
        if self._journal_path is None:
            return
        line = json.dumps(record, sort_keys=True)
        with self._journal_lock:
            with open(self._journal_path, "a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def _replay(self, path: Path) -> None:
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            event = record.get("event")
            if event == "submitted":
                job = Job(record["job_id"], campaign_from_doc(record["spec"]))
                self._jobs[job.id] = job
                continue
            job = self._jobs.get(record.get("job_id", ""))
            if job is None:
                continue
            if event == "generation":
                job.history.append(
                    GenerationStat(
                        generation=record["generation"],
                        best_fitness=record["best_fitness"],
                        mean_fitness=record["mean_fitness"],
                    )
                )
            elif event == "done":
                job.state = DONE
                job.result = result_from_doc(record["result"])
            elif event == "failed":
                job.state = FAILED
                job.error = record.get("error")
        # Anything still mid-flight when the journal ended did not survive.
        for job in self._jobs.values():
            if job.state not in TERMINAL:
                job.state = FAILED
                job.error = "interrupted by service restart"
