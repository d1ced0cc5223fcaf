"""Pure request -> response functions; the HTTP app and the local CLI client both call these."""

from __future__ import annotations

from typing import Callable

from pydantic import BaseModel, ValidationError

from .. import textio
from ..balls import ball_equations
from ..decode import decode, list_size_lower_bound
from ..errors import InvalidInputError
from ..fields import PrimeField, format_poly
from ..gabidulin import GabidulinCode, LiftedCode, lift
from ..harness import ChannelParams, run_experiment
from ..pluecker import plucker_embed, plucker_inverse
from ..subspace import span
from . import schemas as s


def _code(spec: s.CodeSpec) -> GabidulinCode:
    return GabidulinCode.from_descriptor(spec.model_dump())


def _spec_of(code: GabidulinCode) -> s.CodeSpec:
    return s.CodeSpec(**code.descriptor())


def code_info(req: s.CodeRequest) -> s.CodeInfoResponse:
    code = _code(req.spec)
    gen = [[str(x) for x in row] for row in code.generator]
    n = code.k + code.ell
    text = "\n".join([
        f"Gabidulin code q={code.q} ell={code.ell} k={code.k} delta={code.delta}",
        f"modulus: {format_poly(code.ext.modulus)} {list(code.ext.modulus)}",
        f"evaluation points g: {' '.join(str(x) for x in code.g)}",
        "generator matrix:",
        *(" ".join(row) for row in gen),
        f"lifted code: n={n}, size={code.size}, dimension over F_{code.q}={code.dimension}, "
        f"min rank distance={code.delta}, min subspace distance={2 * code.delta}",
    ])
    return s.CodeInfoResponse(spec=_spec_of(code), n=n, size=code.size, dimension=code.dimension,
                              min_rank_distance=code.delta, min_subspace_distance=2 * code.delta,
                              generator=gen, text=text)


def code_enumerate(req: s.CodeRequest) -> s.CodeEnumerateResponse:
    code = _code(req.spec)
    entries, blocks = [], []
    for m in code.messages():
        A = code.encode(m)
        U = lift(A)
        x = plucker_embed(U)
        entries.append(s.CodewordEntry(message=[str(e) for e in m], matrix=A.tolist(),
                                       lifted=[list(r) for r in U.rows], plucker=str(x)))
        c = code.encode_vector(m)
        blocks.append(f"# message {' '.join(str(e) for e in m)} -> codeword "
                      f"{' '.join(str(e) for e in c)} ; plucker {x}\n{textio.format_matrix(A)}")
    return s.CodeEnumerateResponse(codewords=entries, text="\n\n".join(blocks))


def encode(req: s.EncodeRequest) -> s.MatrixResponse:
    code = _code(req.spec)
    A = code.encode(req.message)
    return s.MatrixResponse(rows=A.tolist(), text=textio.format_matrix(A))


def _subspace_response(U) -> s.SubspaceResponse:
    return s.SubspaceResponse(n=U.n, k=U.k, rows=[list(r) for r in U.rows],
                              text=textio.format_subspace(U))


def lift_matrix(req: s.MatrixInput) -> s.SubspaceResponse:
    return _subspace_response(lift(textio.parse_matrix(req.matrix, PrimeField(req.q))))


def plucker_embed_matrix(req: s.MatrixInput) -> s.PluckerResponse:
    U = span(textio.parse_matrix(req.matrix, PrimeField(req.q)))
    x = plucker_embed(U)
    return s.PluckerResponse(n=x.n, k=x.k, coords=list(x.coords), text=textio.format_plucker(x))


def plucker_invert(req: s.PluckerInvertRequest) -> s.SubspaceResponse:
    x = textio.parse_plucker(req.vector, PrimeField(req.q), req.n, req.k)
    return _subspace_response(plucker_inverse(x))


def ball_eqs(req: s.BallEqsRequest) -> s.BallEqsResponse:
    R = textio.parse_subspace(req.center, PrimeField(req.q))
    if req.dim_k > R.n:
        raise InvalidInputError(f"target dimension {req.dim_k} exceeds ambient dimension {R.n}")
    eqs = ball_equations(R, req.metric, req.radius, req.dim_k)
    return s.BallEqsResponse(**textio.ball_equations_to_json(eqs), text=textio.format_ball_equations(eqs))


def decode_received(req: s.DecodeRequest) -> s.DecodeResponse:
    code = _code(req.spec)
    R = textio.parse_subspace(req.received, code.field)
    result = decode(LiftedCode(code), R, req.method, req.metric, req.radius)
    text = "\n\n".join(textio.format_subspace(U) for U in result.codewords)
    header = f"# {len(result)} codeword(s) within {req.metric} radius {req.radius} ({req.method})"
    return s.DecodeResponse(**result.to_json(), solutions=[list(x) for x in result.solutions],
                            text=header + ("\n" + text if text else ""))


def bounds(req: s.BoundsRequest) -> s.BoundsResponse:
    spec = req.spec
    rep = list_size_lower_bound(req.metric, req.radius, spec.k + spec.ell, spec.k, spec.delta,
                                spec.q, req.epsilon)
    thr = "none" if rep.threshold_radius is None else f"{rep.threshold_radius:.6f}"
    text = (f"lower bound {rep.lower_bound}; asymptotic exponent {rep.asymptotic_exponent}; "
            f"threshold radius {thr}")
    return s.BoundsResponse(**rep.to_json(), text=text)


def simulate(req: s.SimulateRequest) -> s.SimulateResponse:
    code = LiftedCode(_code(req.spec))
    p = ChannelParams(req.deletions, req.insertions, req.seed)
    rep = run_experiment(code, p, req.method, req.metric, req.radius, req.trials)
    return s.SimulateResponse(**rep.to_json(), text=rep.summary())


# route name -> (path, request model, handler)
ROUTES: dict[str, tuple[str, type[BaseModel], Callable]] = {
    "code_info": ("/code/info", s.CodeRequest, code_info),
    "code_enumerate": ("/code/enumerate", s.CodeRequest, code_enumerate),
    "encode": ("/encode", s.EncodeRequest, encode),
    "lift": ("/lift", s.MatrixInput, lift_matrix),
    "plucker_embed": ("/plucker/embed", s.MatrixInput, plucker_embed_matrix),
    "plucker_invert": ("/plucker/invert", s.PluckerInvertRequest, plucker_invert),
    "ball_eqs": ("/ball/eqs", s.BallEqsRequest, ball_eqs),
    "decode": ("/decode", s.DecodeRequest, decode_received),
    "bounds": ("/bounds", s.BoundsRequest, bounds),
    "simulate": ("/simulate", s.SimulateRequest, simulate),
}


def dispatch(name: str, payload: dict) -> dict:
    """Validate ``payload``, run the handler, and return the response as plain JSON data."""
    _, model, handler = ROUTES[name]
    try:
        req = model.model_validate(payload)
    except ValidationError as e:
        raise InvalidInputError(str(e)) from None
    return handler(req).model_dump(mode="json")
