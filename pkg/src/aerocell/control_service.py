"""HTTP control plane and live telemetry stream for one simulation.

One service owns exactly one simulation. Request handlers never touch
world state directly: control endpoints flip the run status or enqueue
commands, and the tick loop (a single background thread, the sole state
writer) drains the command queue at each tick start, so command-to-
effect latency is at most one tick. Telemetry fans out to any number of
WebSocket subscribers, each with an independent bounded queue; a
subscriber that falls 1024 samples behind is disconnected, because live
steering wants freshness and the on-disk CSV is the complete record.

Endpoints:
    POST /sim/start | /sim/pause | /sim/reset
    POST /scenario            (load a new scenario document)
    GET  /scenario            (current scenario document)
    GET  /state               (status, simulated time, vehicle snapshots)
    POST /uav/{node_id}/velocity   {"vx": .., "vy": .., "vz": ..}
    WS   /telemetry           (one CSV row per text frame)
"""

from __future__ import annotations

import asyncio
import contextlib
import queue
import threading
import time
from typing import IO, Optional

from fastapi import Body, FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .sim_engine import (
    Scenario,
    ScenarioError,
    Simulation,
    format_sample,
    scenario_from_dict,
    scenario_to_dict,
)

DEFAULT_PORT = 8464
SUBSCRIBER_QUEUE_LIMIT = 1024

_CLOSE = object()


class _Subscriber:
    def __init__(self) -> None:
        self.queue: queue.Queue[str] = queue.Queue(maxsize=SUBSCRIBER_QUEUE_LIMIT)
        self.dropped = False

    def next_row(self):
        """Blocking poll used from the WS sender thread."""
        if self.dropped and self.queue.empty():
            return _CLOSE
        try:
            return self.queue.get(timeout=0.25)
        except queue.Empty:
            return _CLOSE if self.dropped else None


class SimulationService:
    """Single-writer tick loop plus thread-safe control surface."""

    def __init__(
        self,
        scenario: Scenario,
        pace: str = "real",
        telemetry_sink: Optional[IO[str]] = None,
    ) -> None:
        if pace not in ("real", "max"):
            raise ValueError("pace must be 'real' or 'max'")
        self._sim = Simulation(scenario)  # raises ScenarioError when invalid
        self._pace = pace
        self._sink = telemetry_sink
        self._status = "loaded"
        self._commands: queue.Queue = queue.Queue()
        self._subscribers: list[_Subscriber] = []
        self._lock = threading.RLock()
        self._wake = threading.Event()
        self._shutdown = False
        self._thread = threading.Thread(target=self._loop, daemon=True)
        if self._sink is not None:
            from .sim_engine import TELEMETRY_HEADER

            self._sink.write(TELEMETRY_HEADER + "\n")
            self._sink.flush()
        self._thread.start()

    # -- control surface ---------------------------------------------------

    @property
    def scenario(self) -> Scenario:
        with self._lock:
            return self._sim.scenario

    def status(self) -> str:
        with self._lock:
            return self._status

    def state_snapshot(self) -> dict:
        with self._lock:
            world = self._sim.world
            uavs = {
                uid: {
                    "x": cfg.state.pose.x,
                    "y": cfg.state.pose.y,
                    "z": cfg.state.pose.z,
                    "velocity": list(cfg.state.velocity),
                    "battery_pct": min(
                        cfg.vehicle_battery.fraction, cfg.payload_battery.fraction
                    ),
                }
                for uid, cfg in world.uavs.items()
            }
            serving = {ue: ho.serving for ue, ho in world.handover.items()}
            return {
                "status": self._status,
                "t_s": world.t_s,
                "uavs": uavs,
                "serving": serving,
            }

    def start(self) -> None:
        with self._lock:
            if self._status == "ended":
                raise RuntimeError("simulation ended; reset it first")
            self._status = "running"
        self._wake.set()

    def pause(self) -> None:
        with self._lock:
            if self._status != "running":
                raise RuntimeError(f"cannot pause while {self._status}")
            self._status = "paused"

    def reset(self) -> None:
        with self._lock:
            self._sim.reset()
            self._drain_commands()
            self._status = "loaded"

    def load_scenario(self, scenario: Scenario) -> None:
        sim = Simulation(scenario)  # validate before swapping anything
        with self._lock:
            self._sim = sim
            self._drain_commands()
            self._status = "loaded"

    def set_velocity(self, node_id: str, velocity: tuple[float, float, float]) -> None:
        with self._lock:
            if node_id not in self._sim.scenario.uavs:
                raise KeyError(node_id)
            if self._status != "running":
                raise RuntimeError("velocity commands need a running simulation")
        self._commands.put((node_id, velocity))

    def subscribe(self) -> _Subscriber:
        sub = _Subscriber()
        with self._lock:
            self._subscribers.append(sub)
        return sub

    def unsubscribe(self, sub: _Subscriber) -> None:
        with self._lock:
            if sub in self._subscribers:
                self._subscribers.remove(sub)

    def stop(self) -> None:
        self._shutdown = True
        self._wake.set()
        self._thread.join(timeout=5)
        if self._sink is not None:
            self._sink.flush()

    # -- tick loop ----------------------------------------------------------

    def _drain_commands(self) -> list:
        commands = []
        while True:
            try:
                commands.append(self._commands.get_nowait())
            except queue.Empty:
                return commands

    def _loop(self) -> None:
        while not self._shutdown:
            if self.status() != "running":
                self._wake.wait(timeout=0.05)
                self._wake.clear()
                continue
            started = time.monotonic()
            with self._lock:
                if self._status != "running":
                    continue
                commands = self._drain_commands()
                samples = self._sim.step(commands)
                duration = self._sim.scenario.duration_s
                if self._sim.ended or (
                    duration is not None and self._sim.t_s >= duration
                ):
                    self._status = "ended"
                tick_s = self._sim.scenario.tick_s
                subscribers = list(self._subscribers)
            rows = [format_sample(s) for s in samples]
            if self._sink is not None:
                for row in rows:
                    self._sink.write(row + "\n")
                self._sink.flush()
            for sub in subscribers:
                for row in rows:
                    try:
                        sub.queue.put_nowait(row)
                    except queue.Full:
                        sub.dropped = True
                        break
            if self._pace == "real":
                time.sleep(max(0.0, tick_s - (time.monotonic() - started)))


class VelocityCommand(BaseModel):
    vx: float
    vy: float
    vz: float


def create_app(service: SimulationService) -> FastAPI:
    app = FastAPI(title="aerocell control service")
    app.state.service = service
    # operator consoles load from arbitrary origins (file://, dev servers)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/state")
    def get_state() -> dict:
        return service.state_snapshot()

    @app.get("/scenario")
    def get_scenario() -> dict:
        return scenario_to_dict(service.scenario)

    @app.post("/scenario")
    def post_scenario(payload: dict = Body(...)) -> dict:
        try:
            service.load_scenario(scenario_from_dict(payload))
        except ScenarioError as err:
            raise HTTPException(status_code=400, detail=err.violations)
        except (KeyError, TypeError, ValueError) as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {"status": service.status()}

    @app.post("/sim/start")
    def sim_start() -> dict:
        try:
            service.start()
        except RuntimeError as err:
            raise HTTPException(status_code=409, detail=str(err))
        return {"status": service.status()}

    @app.post("/sim/pause")
    def sim_pause() -> dict:
        try:
            service.pause()
        except RuntimeError as err:
            raise HTTPException(status_code=409, detail=str(err))
        return {"status": service.status()}

    @app.post("/sim/reset")
    def sim_reset() -> dict:
        service.reset()
        return {"status": service.status()}

    @app.post("/uav/{node_id}/velocity")
    def post_velocity(node_id: str, cmd: VelocityCommand) -> dict:
        try:
            service.set_velocity(node_id, (cmd.vx, cmd.vy, cmd.vz))
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown uav {node_id!r}")
        except RuntimeError as err:
            raise HTTPException(status_code=409, detail=str(err))
        return {"queued": True}

    @app.websocket("/telemetry")
    async def telemetry_ws(websocket: WebSocket) -> None:
        await websocket.accept()
        sub = service.subscribe()
        loop = asyncio.get_running_loop()

        async def pump() -> None:
            while True:
                row = await loop.run_in_executor(None, sub.next_row)
                if row is _CLOSE:
                    return
                if row is None:
                    continue
                await websocket.send_text(row)

        async def watch_disconnect() -> None:
            # inbound frames are ignored; this surfaces the disconnect
            while True:
                await websocket.receive_text()

        tasks = [asyncio.create_task(pump()), asyncio.create_task(watch_disconnect())]
        try:
            done, pending = await asyncio.wait(tasks, return_when=asyncio.FIRST_COMPLETED)
            for task in pending:
                task.cancel()
            for task in done:
                with contextlib.suppress(WebSocketDisconnect, asyncio.CancelledError):
                    task.exception()
        finally:
            service.unsubscribe(sub)
            with contextlib.suppress(Exception):
                await websocket.close()

    return app


def serve(
    scenario: Scenario,
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    pace: str = "real",
    telemetry_sink: Optional[IO[str]] = None,
) -> None:
    """Validate, bind, and block serving the control plane."""
    import uvicorn

    service = SimulationService(scenario, pace=pace, telemetry_sink=telemetry_sink)
    app = create_app(service)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    finally:
        service.stop()
