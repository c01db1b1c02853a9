# gameforge/games/report.py
from __future__ import annotations
import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from .core import Game, PureProfile
from .errors import GameForgeError
from .isomorphism import AffineWitness
from .patterns import FORMAT_VERSION
from .rationals import format_rational
from .schemas import ErrorBody, ErrorDocument, ReportDocument


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def input_digests(paths: Iterable) -> Dict[str, str]:
    return {str(p): digest(p) for p in paths}


def profile_names(g: Game, s: PureProfile) -> List[str]:
    return [g.strategies[i][x] for i, x in enumerate(s)]


def witness_payload(g: Game, w: AffineWitness) -> Dict[str, Any]:
    return {
        g.players[i]: {"scale": format_rational(beta), "shift": format_rational(gamma)}
        for i, (beta, gamma) in enumerate(w.coefficients)
    }


def build_report(command: str, inputs: Dict[str, str], result: Dict[str, Any]) -> str:
    doc = ReportDocument(version=FORMAT_VERSION, command=command, inputs=inputs, result=result)
    return json.dumps(doc.model_dump(), indent=2, ensure_ascii=False) + "\n"


def build_error(e: GameForgeError) -> str:
    return error_envelope(e.code, str(e))


def error_envelope(code: str, message: str) -> str:
    doc = ErrorDocument(error=ErrorBody(code=code, message=message))
    return json.dumps(doc.model_dump(), indent=2, ensure_ascii=False) + "\n"


def rationals(values: Sequence) -> List[str]:
    return [format_rational(v) for v in values]
