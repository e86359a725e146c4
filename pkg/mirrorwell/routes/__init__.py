from mirrorwell.routes.poly_routes import router as poly_router
from mirrorwell.routes.spectrum_routes import router as spectrum_router
from mirrorwell.routes.wavefunction_routes import router as wavefunction_router

__all__ = ["poly_router", "spectrum_router", "wavefunction_router"]
