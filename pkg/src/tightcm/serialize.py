"""JSON encodings of series, rims, specs, representations and results.

Encoders return plain ``dict``/``list``/``str``/``int`` trees ready for
:func:`json.dumps`; decoders accept the same trees and validate them
through the ordinary constructors, so a decoded value always satisfies the
type's invariants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from .classify import DecompositionResult, EndoFamily, PeakSubset
from .cmmod import QuiverRep, RankTwoSpec
from .combinat import InterlacingReport, Rim
from .errors import BadParameters
from .series import DEFAULT_TRUNCATION, Matrix, SeriesRing, TruncatedSeries


def _need(obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise BadParameters(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is not bool):
        raise BadParameters(f"{where}: field {key!r} has the wrong type")
    return value


# -- series -----------------------------------------------------------------

def series_to_json(s: TruncatedSeries) -> list[str]:
    return s.to_strings()


def _coefficient(raw) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise BadParameters(f"series coefficient {raw!r} is not an integer or a 'p/q' string")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadParameters(f"bad series coefficient {raw!r}") from exc


def series_from_json(data, ring: SeriesRing) -> TruncatedSeries:
    if not isinstance(data, list) or not data:
        raise BadParameters("a series is a non-empty list of coefficients")
    coeffs = [_coefficient(c) for c in data]
    if any(coeffs[ring.N:]):
        raise BadParameters(f"series has nonzero terms beyond t^{ring.N - 1}")
    return ring.poly(coeffs)


# -- combinatorics ------------------------------------------------------------

def rim_to_json(rim: Rim) -> dict:
    return {"n": rim.n, "members": list(rim.members)}


def rim_from_json(data) -> Rim:
    n = _need(data, "n", int, "rim")
    members = _need(data, "members", list, "rim")
    if any(isinstance(m, bool) or not isinstance(m, int) for m in members):
        raise BadParameters("rim members must be integers")
    return Rim(n, tuple(members))


def interlacing_to_json(rep: InterlacingReport) -> dict:
    return {"r": rep.r, "tight": rep.tight,
            "i_positions": list(rep.i_positions), "j_positions": list(rep.j_positions)}


def interlacing_from_json(data) -> InterlacingReport:
    return InterlacingReport(
        _need(data, "r", int, "interlacing"),
        _need(data, "tight", bool, "interlacing"),
        tuple(_need(data, "i_positions", list, "interlacing")),
        tuple(_need(data, "j_positions", list, "interlacing")),
    )


# -- modules ------------------------------------------------------------------

def spec_to_json(spec: RankTwoSpec) -> dict:
    return {"I": rim_to_json(spec.I), "J": rim_to_json(spec.J),
            "b": [series_to_json(s) for s in spec.b], "truncation": spec.ring.N}


def spec_from_json(data, truncation: Optional[int] = None) -> RankTwoSpec:
    """Decode a spec; ``truncation`` overrides the file's own field when given."""
    if truncation is None:
        truncation = data.get("truncation", DEFAULT_TRUNCATION) if isinstance(data, dict) else None
    if isinstance(truncation, bool) or not isinstance(truncation, int) or truncation < 2:
        raise BadParameters(f"truncation must be an integer >= 2, got {truncation!r}")
    ring = SeriesRing(truncation)
    I = rim_from_json(_need(data, "I", dict, "spec"))
    J = rim_from_json(_need(data, "J", dict, "spec"))
    b = tuple(series_from_json(s, ring) for s in _need(data, "b", list, "spec"))
    if not b:
        raise BadParameters("spec: b is empty")
    return RankTwoSpec(I, J, b)


def matrix_to_json(m: Matrix) -> list:
    return [[series_to_json(s) for s in row] for row in m.rows]


def matrix_from_json(data, ring: SeriesRing) -> Matrix:
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise BadParameters("a matrix is a non-empty list of rows")
    return Matrix([[series_from_json(s, ring) for s in row] for row in data])


def rep_to_json(M: QuiverRep) -> dict:
    return {"n": M.n, "k": M.k, "rank": M.rank, "truncation": M.ring.N,
            "x": [matrix_to_json(m) for m in M.x], "y": [matrix_to_json(m) for m in M.y]}


def rep_from_json(data) -> QuiverRep:
    ring = SeriesRing(_need(data, "truncation", int, "representation"))
    return QuiverRep(
        _need(data, "n", int, "representation"),
        _need(data, "k", int, "representation"),
        _need(data, "rank", int, "representation"),
        tuple(matrix_from_json(m, ring) for m in _need(data, "x", list, "representation")),
        tuple(matrix_from_json(m, ring) for m in _need(data, "y", list, "representation")),
    )


# -- classification results ---------------------------------------------------

def _vector_to_json(vec) -> list:
    return [series_to_json(s) for s in vec]


def result_to_json(result: DecompositionResult, with_witness: bool = True) -> dict:
    if not result.is_split:
        return {"verdict": "indecomposable", "S": list(result.S),
                "failing_pair": list(result.failing_pair)}
    out = {"verdict": "split", "X": rim_to_json(result.X), "Y": rim_to_json(result.Y),
           "S": list(result.S), "peaks": sorted(result.peaks.members), "r": result.peaks.r}
    if with_witness and result.phi is not None:
        out["truncation"] = result.phi[0].ring.N
        out["witness"] = {
            "phi": [matrix_to_json(m) for m in result.phi.phis],
            "w": [_vector_to_json(v) for v in result.w],
            "v": [_vector_to_json(v) for v in result.v],
        }
    return out


def result_from_json(data) -> DecompositionResult:
    verdict = _need(data, "verdict", str, "result")
    S = tuple(_need(data, "S", list, "result"))
    if verdict == "indecomposable":
        fp = _need(data, "failing_pair", list, "result")
        if len(fp) != 2:
            raise BadParameters("result: failing_pair must have two entries")
        return DecompositionResult("indecomposable", S, failing_pair=tuple(fp))
    if verdict != "split":
        raise BadParameters(f"result: unknown verdict {verdict!r}")
    X = rim_from_json(_need(data, "X", dict, "result"))
    Y = rim_from_json(_need(data, "Y", dict, "result"))
    peaks = PeakSubset(_need(data, "r", int, "result"), _need(data, "peaks", list, "result"))
    if "witness" not in data:
        return DecompositionResult("split", S, X=X, Y=Y, peaks=peaks)
    ring = SeriesRing(_need(data, "truncation", int, "result"))
    wit = _need(data, "witness", dict, "result")
    phis = tuple(matrix_from_json(m, ring) for m in _need(wit, "phi", list, "witness"))
    ident = Matrix.identity(ring)

    def vectors(key):
        return tuple(tuple(series_from_json(s, ring) for s in vec)
                     for vec in _need(wit, key, list, "witness"))

    return DecompositionResult(
        "split", S, X=X, Y=Y, peaks=peaks, phi=EndoFamily(phis),
        phi_tilde=tuple(ident - p for p in phis), w=vectors("w"), v=vectors("v"),
    )


def strip_witness(result: DecompositionResult) -> DecompositionResult:
    """The same verdict without the witness matrices and vectors."""
    return DecompositionResult(result.verdict, result.S, result.failing_pair,
                               result.X, result.Y, result.peaks)
