from typing import List

from fastapi import APIRouter, Path
from pydantic import BaseModel

from mirrorwell.logging_config import get_logger
from mirrorwell.polyparams import parameter_set
from mirrorwell.schemas.poly import PolynomialParameterSet
from mirrorwell.tables import build_table

logger = get_logger(__name__)

router = APIRouter(prefix="/api", tags=["polynomial"])


class TableResponse(BaseModel):
    title: str
    header: List[str]
    rows: List[List[str]]


@router.get("/poly/{n}", response_model=PolynomialParameterSet)
def get_poly(n: int = Path(..., ge=1, le=100)):
    """Separations admitting a closed-form eigenstate of energy 2n+1.

    Examples:
        >>> GET /api/poly/5
        {"n": 5, "even_params": [0.476251..., 1.47524..., 2.75624...], "odd_params": [0.958572..., 2.02018...]}
    """
    return parameter_set(n)


@router.get("/tables/{which}", response_model=TableResponse)
def get_table(which: int = Path(..., ge=1, le=4)):
    """One of the four reference tables, recomputed."""
    logger.info("Table requested", which=which)
    table = build_table(which)
    return TableResponse(title=table.title, header=list(table.header), rows=[list(row) for row in table.rows])
