from .utils.my_logger import get_logger

from .modules.samplers.route import router as samplers_router
from .modules.mass_discrete.route import router as mass_router
from .modules.bench_cli.route import router as populations_router


def register_sampling_routes(app):
    """Register all sampling routes with the FastAPI app"""
    app.include_router(samplers_router)
    app.include_router(mass_router)
    app.include_router(populations_router)

    get_logger(name="ROUTES").info("✅ All sampling routes registered successfully")
