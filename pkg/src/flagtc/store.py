"""Append-only JSON-lines store of evaluated zero-divisor products."""
from __future__ import annotations

import json
import threading
import time
from pathlib import Path


class ResultStore:
    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index = {}
        if self.path.exists():
            with self.path.open() as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rec = json.loads(line)
                        self._index[(rec["space"], rec["s"], rec["spec"])] = rec

    def record(self, space: str, s: int, spec: str, nonzero: bool, degree: int) -> dict:
        rec = {"space": space, "s": s, "spec": spec, "nonzero": bool(nonzero),
               "degree": degree, "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
        key = (space, s, spec)
        with self._lock:
            if key in self._index:
                return self._index[key]
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
            self._index = {**self._index, key: rec}
        return rec

    def lookup(self, space: str, s: int, spec: str):
        return self._index.get((space, s, spec))

    def witnesses(self, space: str, s: int) -> list:
        """Nonzero records for (space, s), highest degree first."""
        found = [r for (sp, ss, _), r in self._index.items() if sp == space and ss == s and r["nonzero"]]
        return sorted(found, key=lambda r: (-r["degree"], r["spec"]))

    def __len__(self):
        return len(self._index)
