"""
Embedding text format: "<n> <d>" header, then "<label> <v1> ... <vd>" per node
"""

import numpy as np

from src.embedding.sgns import EmbeddingMatrix
from src.utils.errors import ArtifactIOError, ParseError
from src.utils.logging_factory import get_logger

logger = get_logger(__name__)


def write_embeddings(path: str, emb: EmbeddingMatrix) -> None:
    """Write phi rows in vocab order; floats use repr so reading back is exact."""
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(f"{len(emb)} {emb.dim}\n")
            for label, row in zip(emb.labels, emb.phi):
                f.write(label)
                f.write(" ")
                f.write(" ".join(repr(float(x)) for x in row))
                f.write("\n")
    except OSError as e:
        raise ArtifactIOError(f"cannot write embeddings {path}: {e}") from e
    logger.info(f"Wrote {len(emb)} x {emb.dim} embeddings to {path}")


def read_embeddings(path: str) -> EmbeddingMatrix:
    """
    Load an embedding file; context vectors are not stored, so psi is None

    Raises:
        ArtifactIOError: file unreadable
        ParseError: malformed header or row
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise ArtifactIOError(f"cannot read embeddings {path}: {e}") from e

    if not lines:
        raise ParseError("missing '<n> <d>' header", line=1)
    try:
        n, d = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError(f"bad header {lines[0]!r}", line=1)

    labels = []
    phi = np.empty((n, d), dtype=np.float64)
    rows = [line for line in lines[1:] if line]
    if len(rows) != n:
        raise ParseError(f"header announces {n} rows, found {len(rows)}")
    for i, line in enumerate(rows):
        parts = line.split(" ")
        if len(parts) != d + 1:
            raise ParseError(f"expected {d} values, found {len(parts) - 1}", line=i + 2)
        labels.append(parts[0])
        try:
            phi[i] = [float(x) for x in parts[1:]]
        except ValueError:
            raise ParseError("non-numeric vector entry", line=i + 2)
    return EmbeddingMatrix(labels=tuple(labels), phi=phi)
