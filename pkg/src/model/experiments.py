"""
Experiments on the component: reset, replay a prefix, observe outputs.

``ExperimentSession`` is the only path to a backend. It serves known prefixes
from the cache, guards determinism whenever a prefix is replayed, enforces
the input length guard and records every call in an ``ExperimentLog``.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from src.model.component import ComponentHandle
from src.model.errors import (
    AlphabetViolation,
    DeterminismViolation,
    ExperimentLengthExceeded,
    SessionError,
)
from src.model.host_system import SymbolId

logger = logging.getLogger(__name__)

InputSequence = Tuple[SymbolId, ...]
OutputSequence = Tuple[SymbolId, ...]
CommunicationTrace = Tuple[Tuple[SymbolId, SymbolId], ...]


@dataclass(frozen=True)
class LogEntry:
    inputs: InputSequence
    outputs: OutputSequence
    resets: int
    cached: bool
    timestamp: str

    def to_record(self) -> Dict:
        return {
            "seq": list(self.inputs),
            "out": list(self.outputs),
            "resets": self.resets,
            "cached": self.cached,
            "ts": self.timestamp,
        }


@dataclass
class ExperimentLog:
    """Append-only record of experiments plus the prefix cache."""

    entries: List[LogEntry] = field(default_factory=list)
    reset_count: int = 0
    cache: Dict[InputSequence, OutputSequence] = field(default_factory=dict)

    def record(self, inputs: InputSequence, outputs: OutputSequence, cached: bool):
        self.entries.append(LogEntry(inputs, outputs, self.reset_count, cached, datetime.now().isoformat()))

    def remember(self, inputs: InputSequence, outputs: OutputSequence):
        """Store ``outputs`` for ``inputs`` and for every prefix of it."""
        for length in range(len(inputs), -1, -1):
            prefix = inputs[:length]
            if prefix in self.cache:
                break
            self.cache[prefix] = outputs[:length]

    @property
    def experiment_count(self) -> int:
        return len(self.entries)

    @property
    def backend_queries(self) -> List[InputSequence]:
        """Input sequences that actually reached the backend."""
        return [entry.inputs for entry in self.entries if not entry.cached]

    @property
    def max_length(self) -> int:
        return max((len(entry.inputs) for entry in self.entries), default=0)

    def save(self, path: str) -> str:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            for entry in self.entries:
                f.write(json.dumps(entry.to_record()) + "\n")
        return path

    @classmethod
    def load(cls, path: str) -> "ExperimentLog":
        log = cls()
        with open(path, "r", encoding="utf-8") as f:
            for line in f:
                if not line.strip():
                    continue
                record = json.loads(line)
                entry = LogEntry(
                    inputs=tuple(record["seq"]),
                    outputs=tuple(record["out"]),
                    resets=int(record.get("resets", 0)),
                    cached=bool(record.get("cached", False)),
                    timestamp=record.get("ts", ""),
                )
                log.entries.append(entry)
                log.reset_count = max(log.reset_count, entry.resets)
                log.remember(entry.inputs, entry.outputs)
        return log


class ExperimentSession:
    """Exclusive experiment stream on one component handle."""

    def __init__(
        self,
        handle: ComponentHandle,
        log: Optional[ExperimentLog] = None,
        use_cache: bool = True,
        length_limit: Optional[int] = None,
    ):
        self.handle = handle
        self.log = log if log is not None else ExperimentLog()
        self.use_cache = use_cache
        self.length_limit = length_limit
        self._prefix: Optional[InputSequence] = None
        # what the backend has consumed since its last reset, None before any reset
        self._live: Optional[InputSequence] = None

    @property
    def prefix(self) -> Optional[InputSequence]:
        return self._prefix

    def experiment(self, inputs: Iterable[SymbolId]) -> OutputSequence:
        """Reset the component, feed ``inputs`` and return the outputs."""
        sequence = tuple(inputs)
        self._check(sequence)
        outputs = self._lookup(sequence)
        if outputs is None:
            outputs = self._replay(sequence)
            self.log.record(sequence, outputs, cached=False)
        else:
            self.log.record(sequence, outputs, cached=True)
        self._prefix = sequence
        return outputs

    def step(self, symbol: SymbolId) -> SymbolId:
        """Feed one more input after the current prefix and return its output."""
        if self._prefix is None:
            raise SessionError("step requested before any experiment established a prefix")
        sequence = self._prefix + (symbol,)
        self._check(sequence)
        outputs = self._lookup(sequence)
        if outputs is not None:
            self.log.record(sequence, outputs, cached=True)
        elif self._live == self._prefix:
            output = self._send(symbol)
            outputs = self.log.cache.get(self._prefix, ()) + (output,)
            self._observe(sequence, outputs)
            self.log.record(sequence, outputs, cached=False)
        else:
            outputs = self._replay(sequence)
            self.log.record(sequence, outputs, cached=False)
        self._prefix = sequence
        return outputs[-1]

    def is_run(self, trace: Sequence[Tuple[SymbolId, SymbolId]]) -> bool:
        """True iff the component answers ``trace``'s inputs with its outputs."""
        self.experiment(())
        for symbol, expected in trace:
            if self.step(symbol) != expected:
                return False
        return True

    def communication_trace(self, inputs: Iterable[SymbolId]) -> CommunicationTrace:
        sequence = tuple(inputs)
        outputs = self.log.cache.get(sequence)
        if outputs is None:
            outputs = self.experiment(sequence)
        return tuple(zip(sequence, outputs))

    def close(self):
        self.handle.close()

    def _check(self, sequence: InputSequence):
        for symbol in sequence:
            if symbol not in self.handle.inputs:
                raise AlphabetViolation(f"symbol {symbol!r} is not a component input")
        if self.length_limit is not None and len(sequence) > self.length_limit:
            logger.warning("Experiment of length %d exceeds guard %d", len(sequence), self.length_limit)
            raise ExperimentLengthExceeded(
                f"experiment of length {len(sequence)} exceeds the guard of {self.length_limit}"
            )

    def _lookup(self, sequence: InputSequence) -> Optional[OutputSequence]:
        if not self.use_cache:
            return None
        return self.log.cache.get(sequence)

    def _replay(self, sequence: InputSequence) -> OutputSequence:
        self.handle.backend.reset()
        self.log.reset_count += 1
        self._live = ()
        outputs: List[SymbolId] = []
        for symbol in sequence:
            outputs.append(self._send(symbol))
            self._guard(self._live, tuple(outputs))
        result = tuple(outputs)
        self._observe(sequence, result)
        return result

    def _send(self, symbol: SymbolId) -> SymbolId:
        output = self.handle.backend.step(symbol)
        self._live = (self._live or ()) + (symbol,)
        logger.debug("experiment step %s -> %s", symbol, output)
        return output

    def _guard(self, sequence: InputSequence, outputs: OutputSequence):
        known = self.log.cache.get(sequence)
        if known is not None and known != outputs:
            logger.warning("Replay of %s gave %s, previously %s", sequence, outputs, known)
            raise DeterminismViolation(
                f"replaying {' '.join(sequence) or '<empty>'} gave {' '.join(outputs)}, "
                f"previously {' '.join(known)}"
            )

    def _observe(self, sequence: InputSequence, outputs: OutputSequence):
        self._guard(sequence, outputs)
        self.log.remember(sequence, outputs)
