"""Synthetic mutation-table generator and benchmark mapping builder.

The generated TSV mimics the shape of a somatic-mutation export: a unique
``COSM``-style key in ``C0`` followed by categorical and free-text columns
of mixed cardinality, roughly 300 bytes per 13-column row, close to the
per-record size of the original 557,162-row, 169.8 MB export.  Content is
meaningless; only row count, width, value lengths and null rate matter.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from rdfmat.mapping.model import (
    ColumnRef,
    IriTemplate,
    LogicalSource,
    MappingSet,
    Placeholder,
    PredicateObjectMap,
    SourceFormat,
    SubjectMap,
    TriplesMap,
)

CHUNK_ROWS = 50_000

ENTITY_BASE = "http://example.org/entity/"
ONTOLOGY_BASE = "http://example.org/ontology/"
RECORD_CLASS = ONTOLOGY_BASE + "Record"

_BASES = np.array(list("ACGT"))
_AMINO = "ACDEFGHIKLMNPQRSTVWY"
_DESCRIPTIONS = (
    "Substitution - Missense", "Substitution - Nonsense", "Substitution - coding silent",
    "Deletion - Frameshift", "Insertion - In frame", "Complex - compound substitution",
    "Unknown", "Nonstop extension",
)
_SITES = ("lung", "upper_aerodigestive_tract", "pleura", "bronchus", "NS")
_HISTOLOGY = ("carcinoma", "adenocarcinoma", "squamous_cell_carcinoma", "large_cell_carcinoma",
              "small_cell_carcinoma", "mesothelioma", "NS")


@dataclass(frozen=True)
class GeneratedDataset:
    path: Path
    rows: int
    columns: int
    null_rate: float
    seed: int
    byte_size: int

    def __fspath__(self):
        return str(self.path)


def _column_pools(columns: int, rng: np.random.Generator) -> list[list[str]]:
    """One pool of candidate values per non-key column, cycling through value styles."""
    pools = []
    for j in range(1, columns):
        style = (j - 1) % 6
        if style == 0:  # gene + transcript
            n = 18_000
            genes = rng.integers(0, 36**4, n)
            tx = rng.integers(10**10, 10**11, n)
            pools.append([f"G{np.base_repr(g, 36):0>4}_ENST{t:011d}" for g, t in zip(genes.tolist(), tx.tolist())])
        elif style == 1:  # sample identifier
            n = 7_500
            ids = rng.integers(0, 10**7, n).tolist()
            pools.append([f"TCGA-{i // 10**5 % 100:02d}-{i % 10**5:05d}-01A-11D" for i in ids])
        elif style == 2:  # CDS change
            n = 120_000
            pos = rng.integers(1, 20_000, n).tolist()
            ref = _BASES[rng.integers(0, 4, n)].tolist()
            alt = _BASES[rng.integers(0, 4, n)].tolist()
            tx = rng.integers(10**10, 10**11, n).tolist()
            pools.append([f"ENST{t:011d}:c.{p}{r}>{a}" for t, p, r, a in zip(tx, pos, ref, alt)])
        elif style == 3:  # protein change
            n = 90_000
            pos = rng.integers(1, 3_000, n).tolist()
            a1 = rng.integers(0, 20, n).tolist()
            a2 = rng.integers(0, 20, n).tolist()
            tx = rng.integers(10**10, 10**11, n).tolist()
            pools.append([f"ENSP{t:011d}:p.{_AMINO[x]}{p}{_AMINO[y]}" for t, p, x, y in zip(tx, pos, a1, a2)])
        elif style == 4:  # genomic coordinates
            n = 200_000
            chrom = rng.integers(1, 23, n).tolist()
            start = rng.integers(10**6, 2 * 10**8, n).tolist()
            pools.append([f"GRCh38:{c}:{s}-{s}:+" for c, s in zip(chrom, start)])
        else:  # low-cardinality descriptive text
            words = _DESCRIPTIONS if (j // 6) % 3 == 0 else _SITES if (j // 6) % 3 == 1 else _HISTOLOGY
            pools.append(list(words))
    return pools


def generate_synthetic_dataset(rows: int, columns: int, null_rate: float, seed: int, out) -> GeneratedDataset:
    """Write a deterministic TSV with header ``C0..C{columns-1}`` to ``out``.

    ``C0`` holds a unique, never-null key; every other cell is null with
    probability ``null_rate``.  Same arguments always give the same bytes.
    """
    if rows < 1 or columns < 1:
        raise ValueError("rows and columns must be >= 1")
    if not 0.0 <= null_rate < 1.0:
        raise ValueError("null_rate must be in [0, 1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    pools = _column_pools(columns, rng)
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(f"C{j}" for j in range(columns)) + "\n")
        for start in range(0, rows, CHUNK_ROWS):
            n = min(CHUNK_ROWS, rows - start)
            cols = [[f"COSM{i:09d}" for i in range(start + 1, start + n + 1)]]
            for pool in pools:
                picks = rng.integers(0, len(pool), n).tolist()
                col = [pool[k] for k in picks]
                if null_rate > 0.0:
                    for k in np.flatnonzero(rng.random(n) < null_rate).tolist():
                        col[k] = ""
                cols.append(col)
            fh.write("".join("\t".join(r) + "\n" for r in zip(*cols)))
    return GeneratedDataset(path, rows, columns, null_rate, seed, os.path.getsize(path))


def build_benchmark_map(source_name: str, attribute_count: int, map_id: str | None = None) -> TriplesMap:
    """Triples map over ``C0`` (subject key) and attributes ``C1..C{attribute_count}``."""
    if attribute_count < 0:
        raise ValueError("attribute_count must be >= 0")
    poms = tuple(
        PredicateObjectMap(f"{ONTOLOGY_BASE}c{i}", ColumnRef(f"C{i}")) for i in range(1, attribute_count + 1)
    )
    subject = SubjectMap(IriTemplate((ENTITY_BASE, Placeholder("C0"))), RECORD_CLASS)
    return TriplesMap(
        map_id or f"{ONTOLOGY_BASE}map/Record{attribute_count}",
        LogicalSource(source_name, SourceFormat.from_name(source_name)),
        subject,
        poms,
    )


def build_benchmark_mapping(source_name: str, attribute_count: int) -> MappingSet:
    return MappingSet((build_benchmark_map(source_name, attribute_count),))
