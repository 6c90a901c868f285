from contextlib import asynccontextmanager

import sentry_sdk
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import RedirectResponse

from .config.my_settings import settings
from .helpers.error_handlers import register_error_handlers
from .sampling_routes import register_sampling_routes
from .utils.my_logger import get_logger

logger = get_logger(name="APP")


# LIFESPAN
@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup event
    await startup_event(app)

    yield

    # Shutdown event
    await shutdown_event(app)


# FASTAPI APP
app = FastAPI(
    title="Weighted Sampling Service",
    version="0.1.0",
    lifespan=lifespan
)

# GLOBAL ERROR HANDLERS
register_error_handlers(app)

# CORS MIDDLEWARE
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# STARTUP EVENT
async def startup_event(app: FastAPI):
    logger.info("🚀 Starting up Weighted Sampling Service...")
    if settings.SENTRY_DSN:
        sentry_sdk.init(dsn=settings.SENTRY_DSN, traces_sample_rate=0.0)
        logger.info("✅ Sentry error reporting enabled")
    app.state.default_seed = settings.DEFAULT_SEED


# ROUTES
register_sampling_routes(app)


# ROOT REDIRECT TO DOCS
@app.get("/")
async def root():
    return RedirectResponse(url="/docs")


# HEALTH CHECK
@app.get("/health")
async def health_check():
    return {"status": "The server is running successfully"}


# SHUTDOWN EVENT
async def shutdown_event(app: FastAPI):
    logger.info("🛑 Shutting down Weighted Sampling Service...")
