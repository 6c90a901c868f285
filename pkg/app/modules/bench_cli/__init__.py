"""
Benchmark populations and the command-line tool
"""
from .model import PopulationKind, PopulationSpec, BenchRecord, CSV_HEADER
from .service import gen_population, raw_population, run_cell, bench_grid, write_bench_csv
from .error_models import UsageError, OutputError, PopulationError
