"""
Seed derivation: one root seed fans out to every instance and stage.
"""
import hashlib


def derive_seed(root: int, index: int, stage: str) -> int:
    """First 8 bytes of SHA-256 over (root, index, stage), as an unsigned integer."""
    digest = hashlib.sha256(f"{root}:{index}:{stage}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
