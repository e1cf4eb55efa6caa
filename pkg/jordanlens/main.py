from datetime import datetime
from typing import Tuple

from fastapi import Depends, FastAPI, HTTPException, status
from fastapi.middleware.cors import CORSMiddleware

from jordanlens import __version__, schemas
from jordanlens.config import Settings, configure_logging, get_settings
from jordanlens.equivalence import decide_equivalent
from jordanlens.exceptions import JordanLensError
from jordanlens.exchange import format_complex
from jordanlens.models import Subspace
from jordanlens.numrange import numerical_radius, product_range, sum_range
from jordanlens.principal import principal_angles
from jordanlens.subspace import five_part_decompose, orthonormalize, synthesize_pair

configure_logging()

app = FastAPI(
    title="JordanLens API",
    description="Principal angles, canonical forms and numerical ranges of pairs of subspaces",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _tol(requested, settings: Settings) -> float:
    return requested if requested is not None else settings.tol


def _pair(request: schemas.PairRequest, tol: float) -> Tuple[Subspace, Subspace]:
    return orthonormalize(request.M.to_array(), tol), orthonormalize(request.N.to_array(), tol)


def _bad_request(e: Exception, action: str) -> HTTPException:
    return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=f"Error {action}: {str(e)}")


def _server_error(e: Exception, action: str) -> HTTPException:
    return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"Error {action}: {str(e)}")


@app.get("/")
async def root():
    """Root endpoint"""
    return {"message": "JordanLens API", "version": __version__}


@app.get("/health", response_model=schemas.HealthResponse)
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "timestamp": datetime.now()}


@app.post("/angles", response_model=schemas.AngleResponse)
async def angles(request: schemas.PairRequest, settings: Settings = Depends(get_settings)):
    tol = _tol(request.tol, settings)
    try:
        dec = principal_angles(*_pair(request, tol), tol)
        return schemas.AngleResponse(
            angles=dec.angles.tolist(),
            dixmier_angle=dec.dixmier_angle,
            friedrichs_angle=dec.friedrichs_angle,
            n_zero=dec.n_zero,
            n_interior=dec.n_interior,
            n_right=dec.n_right,
        )
    except JordanLensError as e:
        raise _bad_request(e, "computing principal angles")
    except Exception as e:
        raise _server_error(e, "computing principal angles")


@app.post("/decompose", response_model=schemas.DecompositionResponse)
async def decompose(request: schemas.PairRequest, settings: Settings = Depends(get_settings)):
    tol = _tol(request.tol, settings)
    try:
        five = five_part_decompose(*_pair(request, tol), tol)
        a, b, c, d, r = five.counts
        return schemas.DecompositionResponse(
            a=a, b=b, c=c, d=d, r=r,
            generic=five.is_generic,
            generalized_generic=five.is_generalized_generic,
        )
    except JordanLensError as e:
        raise _bad_request(e, "decomposing pair")
    except Exception as e:
        raise _server_error(e, "decomposing pair")


@app.post("/equivalence", response_model=schemas.EquivalenceReport)
async def equivalence(request: schemas.EquivalenceRequest, settings: Settings = Depends(get_settings)):
    tol = _tol(request.tol, settings)
    try:
        return decide_equivalent(_pair(request.pair1, tol), _pair(request.pair2, tol), tol)
    except JordanLensError as e:
        raise _bad_request(e, "deciding equivalence")
    except Exception as e:
        raise _server_error(e, "deciding equivalence")


@app.post("/numrange/sum", response_model=schemas.Interval)
async def numrange_sum(request: schemas.PairRequest, settings: Settings = Depends(get_settings)):
    tol = _tol(request.tol, settings)
    try:
        return sum_range(*_pair(request, tol), tol)
    except JordanLensError as e:
        raise _bad_request(e, "computing W(P+Q)")
    except Exception as e:
        raise _server_error(e, "computing W(P+Q)")


@app.post("/numrange/product", response_model=schemas.ProductRangeResponse)
async def numrange_product(request: schemas.ProductRangeRequest, settings: Settings = Depends(get_settings)):
    tol = _tol(request.tol, settings)
    samples = request.samples if request.samples is not None else settings.samples
    try:
        region = product_range(*_pair(request, tol), samples, tol)
        return schemas.ProductRangeResponse(
            vertices=[[z.real, z.imag] for z in region.vertices],
            disks=[
                schemas.DiskResponse(
                    center_re=disk.center.real,
                    center_im=disk.center.imag,
                    semi_major=disk.semi_major,
                    semi_minor=disk.semi_minor,
                )
                for disk in region.disks
            ],
            numerical_radius=numerical_radius(region),
        )
    except JordanLensError as e:
        raise _bad_request(e, "computing W(PQ)")
    except Exception as e:
        raise _server_error(e, "computing W(PQ)")


@app.post("/random-pair", response_model=schemas.RandomPairResponse)
async def random_pair(request: schemas.RandomPairRequest):
    try:
        M, N = synthesize_pair(request.angles, request.a, request.b, request.c, request.d, seed=request.seed)
        return schemas.RandomPairResponse(
            M=[[format_complex(z) for z in row] for row in M.basis],
            N=[[format_complex(z) for z in row] for row in N.basis],
        )
    except JordanLensError as e:
        raise _bad_request(e, "synthesizing pair")
    except Exception as e:
        raise _server_error(e, "synthesizing pair")


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
