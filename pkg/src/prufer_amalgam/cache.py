"""On-disk cache of ideal lattices, keyed by the digest of a ring's tables.

Each entry is a JSON file listing the ideals as hex-encoded packed bitmasks.
Loading re-verifies one randomly chosen entry (closure under addition and
multiplication by the ring); a failed check discards the file.
"""

from __future__ import annotations

import json
import logging
import os
import random
import tempfile
from pathlib import Path

import numpy as np

from .rings import FiniteRing

ENV_VAR = "PRUFER_AMALGAM_CACHE"
FORMAT_VERSION = 1

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "prufer-amalgam"


def _is_ideal(R: FiniteRing, mask: np.ndarray) -> bool:
    if mask.shape != (R.order,) or not mask[R.zero]:
        return False
    idx = np.nonzero(mask)[0]
    sums = R.add[idx[:, None], idx[None, :]]
    prods = R.mul[:, idx]
    return bool(mask[sums].all() and mask[prods].all())


class LatticeCache:
    """Directory-backed store used by :func:`prufer_amalgam.ideals.all_ideals`."""

    def __init__(self, directory: str | os.PathLike | None = None, seed: int | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._rng = random.Random(seed)
        self.hits = 0
        self.misses = 0
        self.rejected = 0

    def path_for(self, R: FiniteRing) -> Path:
        return self.directory / f"{R.digest}.json"

    def load(self, R: FiniteRing) -> list[bytes] | None:
        path = self.path_for(R)
        try:
            payload = json.loads(path.read_text())
            if payload.get("version") != FORMAT_VERSION or payload.get("order") != R.order:
                raise ValueError("header mismatch")
            keys = [bytes.fromhex(h) for h in payload["ideals"]]
            if not keys:
                raise ValueError("empty lattice")
        except OSError:
            self.misses += 1
            return None
        except (ValueError, KeyError, TypeError, AttributeError) as exc:
            self._discard(path, f"unreadable ({exc})")
            return None
        probe = keys[self._rng.randrange(len(keys))]
        mask = np.unpackbits(np.frombuffer(probe, dtype=np.uint8))[: R.order].astype(bool)
        if len(probe) != (R.order + 7) // 8 or not _is_ideal(R, mask):
            self._discard(path, "spot check failed")
            return None
        self.hits += 1
        return keys

    def store(self, R: FiniteRing, keys: list[bytes]) -> None:
        payload = {
            "version": FORMAT_VERSION,
            "ring": R.label,
            "order": R.order,
            "ideals": [k.hex() for k in keys],
        }
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.replace(tmp, self.path_for(R))
        except OSError as exc:
            log.warning("could not write lattice cache: %s", exc)

    def _discard(self, path: Path, reason: str) -> None:
        self.rejected += 1
        log.warning("discarding lattice cache entry %s: %s", path.name, reason)
        try:
            path.unlink()
        except OSError:
            pass
