"""Unique sink orientations: the Sink-or-Clash problem, its query games,
resolution refutations and completability certificates."""

from .cube import (Aborted, FaceSpec, InvalidArgument, MultipleSinks, OutmapTable,
                   PartialOutmapTable, PreconditionViolated, UsoError, clash, enumerate_usos,
                   face_sink, find_clash, is_uso, is_uso_by_faces, parse_outmap, format_outmap)
from .solvers import QueryOracle, Verdict, product_solve, seesaw_solve, solve, verify_verdict

__all__ = [
    "Aborted", "FaceSpec", "InvalidArgument", "MultipleSinks", "OutmapTable",
    "PartialOutmapTable", "PreconditionViolated", "UsoError", "clash", "enumerate_usos",
    "face_sink", "find_clash", "is_uso", "is_uso_by_faces", "parse_outmap", "format_outmap",
    "QueryOracle", "Verdict", "product_solve", "seesaw_solve", "solve", "verify_verdict",
]
