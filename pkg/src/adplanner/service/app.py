"""FastAPI application: the planner's HTTP surface.

Endpoints:
    PUT  /network          load (parse + prune) a network file, atomic swap
    GET  /network          nodes with metrics and cpm, edges, bucket vocabulary
    POST /jobs             queue an optimization, 202 with the job id
    GET  /jobs/{id}        full job record
    GET  /jobs/{id}/stream NDJSON: one line per generation, then a done line

Invalid request bodies return 400 with field-level messages (422 is
reserved for infeasible campaigns). Jobs run against the network that
was active when they were submitted; loading a new network never
disturbs jobs in flight.
"""

from __future__ import annotations

import json
import random
import threading
from contextlib import asynccontextmanager
from pathlib import Path
from typing import AsyncIterator

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, StreamingResponse

from .. import __version__
from ..constraints import build_cost_model, bucket_vocabulary, demographic_filter
from ..ingest import prune
from ..netio import NetworkFileError, network_content_hash, parse_network_file
from ..network import WebsiteNetwork
from ..overlap import OverlapMatrix, overlap_matrix
from .jobs import JobStore
from .schemas import CampaignSpecIn

SEED_BITS = 31


class NetworkState:
    """One loaded network plus its lazily computed overlap matrix."""

    def __init__(self, network: WebsiteNetwork, network_hash: str):
        self.network = network
        self.network_hash = network_hash
        self._matrix: OverlapMatrix | None = None
        self._matrix_lock = threading.Lock()

    def matrix(self) -> OverlapMatrix:
        # The first job on a network pays the cost; everyone else reuses it.
        with self._matrix_lock:
            if self._matrix is None:
                self._matrix = overlap_matrix(self.network)
            return self._matrix


class PlannerState:
    """Everything the routes share: the active network and the job store."""

    def __init__(self, max_jobs: int | None = None, journal_path: str | Path | None = None):
        self.active: NetworkState | None = None
        self.jobs = JobStore(max_jobs=max_jobs, journal_path=journal_path)
        self._swap_lock = threading.Lock()
        self._seed_rng = random.SystemRandom()

    def load(self, data: bytes) -> dict[str, int | str]:
        """Parse, prune, and atomically activate a network file."""
        net = parse_network_file(data)
        pruned = prune(net)
        if len(pruned) == 0:
            raise NetworkFileError("no usable nodes left after pruning")
        state = NetworkState(pruned, network_content_hash(pruned))
        with self._swap_lock:
            self.active = state
        return {
            "network_hash": state.network_hash,
            "nodes": len(pruned),
            "edges": len(pruned.edges),
            "removed_nodes": len(net) - len(pruned),
        }

    def new_seed(self) -> int:
        return self._seed_rng.getrandbits(SEED_BITS)


def create_app(
    max_jobs: int | None = None, journal_path: str | Path | None = None
) -> FastAPI:
    state = PlannerState(max_jobs=max_jobs, journal_path=journal_path)

    @asynccontextmanager
    async def lifespan(_: FastAPI) -> AsyncIterator[None]:
        yield
        state.jobs.shutdown()

    app = FastAPI(title="ad media planner", version=__version__, lifespan=lifespan)
    app.state.planner = state
    # the planner console is served as static files from another origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(RequestValidationError)
    def invalid_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        # Body validation problems are the client's 400, not the default 422;
        # 422 here means a well-formed but infeasible campaign.
        detail = [
            {"loc": list(err.get("loc", ())), "msg": err.get("msg"), "type": err.get("type")}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.put("/network")
    async def put_network(request: Request) -> dict[str, int | str]:
        data = await request.body()
        try:
            return state.load(data)
        except NetworkFileError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

    @app.get("/network")
    def get_network() -> dict[str, object]:
        active = state.active
        if active is None:
            raise HTTPException(status_code=404, detail="no network loaded")
        net = active.network
        cost = build_cost_model(net)
        nodes = []
        for node_id in net.node_ids():
            node = net.get(node_id)
            nodes.append(
                {
                    "id": node.id,
                    "domain": node.domain,
                    "reach_pct": node.reach_pct,
                    "age_ratios": dict(sorted(node.age_ratios.items())),
                    "income_ratios": dict(sorted(node.income_ratios.items())),
                    "banner_ads": node.banner_ads,
                    "cpm_usd": cost[node.id],
                }
            )
        edges = [
            {"src": e.src, "dst": e.dst, "alpha_pct": e.alpha * 100.0}
            for e in sorted(net.edges, key=lambda e: (e.src, e.dst))
        ]
        return {
            "network_hash": active.network_hash,
            "nodes": nodes,
            "edges": edges,
            "buckets": bucket_vocabulary(net),
        }

    @app.post("/jobs", status_code=202)
    def post_job(spec_in: CampaignSpecIn) -> dict[str, str]:
        active = state.active
        if active is None:
            raise HTTPException(status_code=409, detail="no network loaded")
        seed = spec_in.seed if spec_in.seed is not None else state.new_seed()
        spec = spec_in.to_domain(seed)
        try:
            feasible = demographic_filter(active.network, spec.targeting)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if len(feasible) < spec.num_sites:
            raise HTTPException(status_code=422, detail=f"infeasible: {len(feasible)} feasible sites")
        job = state.jobs.submit(spec, active.network, active.matrix, feasible)
        return {"job_id": job.id}

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> dict[str, object]:
        job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job id {job_id!r}")
        return job.snapshot()

    @app.get("/jobs/{job_id}/stream")
    def stream_job(job_id: str) -> StreamingResponse:
        job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job id {job_id!r}")

        def lines():
            for event in job.events():
                yield json.dumps(event, sort_keys=True) + "\n"

        return StreamingResponse(lines(), media_type="application/x-ndjson")

    return app
