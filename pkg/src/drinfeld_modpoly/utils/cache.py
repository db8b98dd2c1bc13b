"""Checksummed JSON store for the bridge polynomials F_k, G_k, H_k.

The polynomials depend only on the constant field and on k_max, so one file
per (q, p, e, k_max) is kept and entries never expire.
"""

import hashlib
import json
from pathlib import Path
from typing import Any

from src.drinfeld_modpoly.config import settings
from src.drinfeld_modpoly.utils.logging import setup_logger

logger = setup_logger(__name__)


def payload_checksum(payload: dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON text of ``payload``."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


class BridgeCache:
    """One JSON file per field and degree; a checksum mismatch discards the entry."""

    def __init__(self, cache_dir: Path | None = None):
        self.cache_dir = Path(cache_dir or settings.cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        logger.info("BridgeCache initialized", extra={"cache_dir": str(self.cache_dir)})

    def entry_path(self, q: int, p: int, e: int, k_max: int, kind: str = "bridge") -> Path:
        """File holding the ``kind`` payload for F_q = F_{p^e} up to index k_max."""
        return self.cache_dir / f"{kind}-q{q}-p{p}-e{e}-k{k_max}.json"

    def get(self, q: int, p: int, e: int, k_max: int, kind: str = "bridge") -> dict[str, Any] | None:
        """The stored payload, or None when it is absent or fails its checksum."""
        path = self.entry_path(q, p, e, k_max, kind)
        context = {"entry": path.name, "q": q, "k_max": k_max}
        if not path.is_file():
            logger.debug("Cache miss", extra=context)
            return None

        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            if payload_checksum(payload) != entry["checksum"]:
                raise ValueError("checksum mismatch")
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            logger.warning("Discarding cache entry", extra={**context, "error": str(exc)})
            path.unlink(missing_ok=True)
            return None

        logger.info("Cache hit", extra=context)
        return payload

    def set(
        self, q: int, p: int, e: int, k_max: int, payload: dict[str, Any], kind: str = "bridge"
    ) -> None:
        path = self.entry_path(q, p, e, k_max, kind)
        entry = {
            "q": q,
            "k_max": k_max,
            "kind": kind,
            "checksum": payload_checksum(payload),
            "payload": payload,
        }
        try:
            path.write_text(json.dumps(entry, indent=2, sort_keys=True))
        except (OSError, TypeError) as exc:
            logger.error("Failed to write cache entry", extra={"entry": path.name, "error": str(exc)})
            return
        logger.info("Cached bridge polynomials", extra={"entry": path.name, "q": q})

    def clear(self) -> int:
        """Delete every stored entry and return how many were removed."""
        removed = 0
        for path in sorted(self.cache_dir.glob("*.json")):
            try:
                path.unlink()
            except OSError as exc:
                logger.warning("Could not delete cache entry", extra={"entry": path.name, "error": str(exc)})
            else:
                removed += 1
        logger.info("Cleared cache", extra={"entries_removed": removed})
        return removed
