import os
from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException
from fastapi.responses import HTMLResponse, JSONResponse

from src.application.CustomError import CustomError, InfiniteGroup, NotApplicable
from src.application.FiniteField import verify_gu29_isomorphism
from src.application.GroupReportManager import GroupReportManager
from src.application.PauliRootGroups import CapExceeded, enumerate_group, infiniteness_certificate
from src.application.QMat import evaluate_gate_word, signed_pauli_action
from src.application.Relations import decide_relation, witness_generators
from src.application.ResultsStore import ReportTable, ResultsStore, database_path_from_env
from src.application.Schemas import (
    ActionModel,
    CertificateModel,
    ClassificationModel,
    GU29ReportModel,
    RelationVerdictModel,
    WitnessModel,
    enumeration_to_model,
)
from src.application.SpecLiteral import parse_gate_word, parse_spec

DEFAULT_ENUMERATION_CAP = 4096


@asynccontextmanager
async def lifespan(_: FastAPI) -> AsyncGenerator:
    global enumeration_cap
    global report_manager

    enumeration_cap = int(os.environ.get('ENUMERATION_CAP', DEFAULT_ENUMERATION_CAP))
    report_manager = GroupReportManager(ResultsStore(database_path_from_env()))
    yield

app = FastAPI(
    title='pauli-root-groups-app',
    description='[pauli-root-groups-API]',
    lifespan=lifespan
)


def _http_error(e: Exception) -> HTTPException:
    """Maps domain errors to 400, unanswerable requests to 422 and everything else to 500."""
    if isinstance(e, (NotApplicable, InfiniteGroup)):
        return HTTPException(status_code=422, detail=str(e))
    if isinstance(e, CustomError):
        return HTTPException(status_code=400, detail=str(e))
    return HTTPException(status_code=500, detail=f'Unexpected error: {e}')


def _json(model) -> JSONResponse:
    return JSONResponse(content=model.model_dump(mode='json', by_alias=True), status_code=200)


@app.get('/', tags=['Root'])
async def root() -> HTMLResponse:
    """Gets the root endpoint of the service.

    Returns:
        A HTMLResponse with a standard message.
    """
    return HTMLResponse(content=f'pauli-root-groups-API is running. Enumeration cap: {enumeration_cap}',
                        status_code=200)


@app.get('/v1/groups/{spec}/classify', tags=['Groups'])
def classify_group(spec: str) -> JSONResponse:
    """Kind, finiteness, order and structure label of a group literal."""
    try:
        return _json(ClassificationModel.from_domain(parse_spec(spec)))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/groups/{spec}/enumerate', tags=['Groups'])
def enumerate_spec(spec: str, cap: int | None = None) -> JSONResponse:
    """
    Enumerates the group; a CapExceeded body is returned with status 200 since it is an expected result.
    """
    try:
        result = enumerate_group(parse_spec(spec), cap=cap or enumeration_cap)
        return _json(enumeration_to_model(result))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/groups/{spec}/certificate', tags=['Groups'])
def certify_group(spec: str) -> JSONResponse:
    """
    Infiniteness certificate of a smooth group.

    Args:
        spec (str): Group literal or alias.

    Returns:
        A JSONResponse with traceSquared, its coordinates and the witnessIndex.

    Raises:
        HTTPException: 422 for finite groups, 400 for unparsable literals.
    """
    try:
        return _json(CertificateModel.from_domain(infiniteness_certificate(parse_spec(spec))))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/relations/equal', tags=['Relations'])
def relation_equal(p: str, q: str) -> JSONResponse:
    """
    Decides P = Q.

    Args:
        p (str): Group literal of P.
        q (str): Group literal of Q.

    Returns:
        A JSONResponse with the verdict, its rule tag and the evidence.
    """
    try:
        return _json(RelationVerdictModel.from_domain(decide_relation(parse_spec(p), parse_spec(q), 'equal')))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/relations/subgroup', tags=['Relations'])
def relation_subgroup(p: str, q: str) -> JSONResponse:
    """Decides P ≤ Q; same body as /v1/relations/equal."""
    try:
        return _json(RelationVerdictModel.from_domain(decide_relation(parse_spec(p), parse_spec(q), 'subgroup')))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/relations/witness', tags=['Relations'])
def relation_witness(p: str, q: str) -> JSONResponse:
    """Words over the generators of p for the generators of q."""
    try:
        return _json(WitnessModel.from_domain(witness_generators(parse_spec(p), parse_spec(q))))
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/clifford/gu29', tags=['Clifford'])
def clifford_gu29(sample_size: int = 1000, seed: int = 0) -> JSONResponse:
    try:
        clifford = enumerate_group(parse_spec('clifford'), cap=enumeration_cap)
        if isinstance(clifford, CapExceeded):
            raise HTTPException(status_code=500, detail='Clifford group exceeded the enumeration cap.')
        return _json(GU29ReportModel.from_domain(
            verify_gu29_isomorphism(clifford, sample_size=sample_size, seed=seed)))
    except HTTPException:
        raise
    except Exception as e:
        raise _http_error(e)


@app.get('/v1/action', tags=['Clifford'])
def pauli_action(word: str) -> JSONResponse:
    """Permutation of the six signed Pauli matrices induced by a gate word."""
    try:
        matrix = evaluate_gate_word(parse_gate_word(word))
        return _json(ActionModel.from_domain(word, matrix, signed_pauli_action(matrix)))
    except Exception as e:
        raise _http_error(e)


@app.post('/v1/reports/orders', tags=['Reports'])
def build_order_report(cyclic_max: int = 12, polycyclic_max: int = 8) -> JSONResponse:
    """
    Builds the order table and stores it in the results database.

    Returns:
        JSONResponse: Status message and the number of reproduced orders.
    """
    try:
        table = report_manager.order_table(cyclic_max=cyclic_max, polycyclic_max=polycyclic_max)
        report_manager.save_report(ReportTable.ORDERS, table)
        return JSONResponse(
            content={'message': 'Order table stored.',
                     'rows': len(table),
                     'reproduced': int(table['match'].sum())},
            status_code=200
        )
    except Exception as e:
        raise _http_error(e)
