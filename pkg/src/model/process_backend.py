"""
Backend for components that run as a separate program.

The program reads commands on standard input and answers on standard output,
one line each:

    RESET        -> OK
    IN <symbol>  -> OUT <symbol>

A dedicated reader thread pumps standard output into a queue so that a silent
component is detected by timeout instead of blocking the checker.
"""

import logging
import queue
import shlex
import subprocess
import threading
from typing import FrozenSet, Optional

from src.model.errors import AdapterFailure
from src.model.host_system import SymbolId

logger = logging.getLogger(__name__)

_EOF = object()


class ProcessBackend:
    def __init__(self, command: str, outputs: FrozenSet[SymbolId], timeout_ms: int = 5000):
        self.command = command
        self.outputs = frozenset(outputs)
        self.timeout = timeout_ms / 1000.0
        self._lines: "queue.Queue[object]" = queue.Queue()
        try:
            self._process = subprocess.Popen(
                shlex.split(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL,
                text=True,
                bufsize=1,
            )
        except OSError as e:
            raise AdapterFailure(f"cannot start component '{command}': {e}") from e
        self._reader = threading.Thread(target=self._pump, name="component-reader", daemon=True)
        self._reader.start()
        logger.info("Started component process %s (pid %s)", command, self._process.pid)

    def _pump(self):
        for line in self._process.stdout:
            self._lines.put(line.rstrip("\r\n"))
        self._lines.put(_EOF)

    def _send(self, line: str):
        try:
            self._process.stdin.write(line + "\n")
            self._process.stdin.flush()
        except (BrokenPipeError, OSError, ValueError) as e:
            raise AdapterFailure(f"component '{self.command}' stopped accepting input: {e}") from e

    def _receive(self, request: str) -> str:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise AdapterFailure(
                f"component '{self.command}' did not answer {request!r} within {self.timeout:g}s"
            ) from None
        if line is _EOF:
            raise AdapterFailure(f"component '{self.command}' exited while answering {request!r}")
        logger.debug("component <- %s | -> %s", request, line)
        return line

    def reset(self) -> None:
        self._send("RESET")
        reply = self._receive("RESET")
        if reply.strip() != "OK":
            raise AdapterFailure(f"unexpected reply to RESET: {reply!r}")

    def step(self, symbol: SymbolId) -> SymbolId:
        request = f"IN {symbol}"
        self._send(request)
        reply = self._receive(request)
        parts = reply.split()
        if len(parts) != 2 or parts[0] != "OUT":
            raise AdapterFailure(f"malformed reply to {request!r}: {reply!r}")
        if parts[1] not in self.outputs:
            raise AdapterFailure(f"reply to {request!r} uses unknown output symbol {parts[1]!r}")
        return parts[1]

    def close(self, wait: Optional[float] = 1.0) -> None:
        if self._process.poll() is not None:
            return
        try:
            self._process.stdin.close()
        except OSError:
            pass
        try:
            self._process.wait(timeout=wait)
        except subprocess.TimeoutExpired:
            self._process.kill()
            self._process.wait()
        logger.info("Stopped component process %s", self.command)
