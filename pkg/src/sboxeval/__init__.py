"""Walsh-Hadamard spectra and nonlinearity of S-boxes.

Mask-major (transposed) spectrum storage keeps each transform column in one
contiguous array; the fused transform harvests per-column maxima during the
final butterfly pass; a static column partition spreads the work over a
thread pool with bit-identical results for any worker count.  Brute-force
oracles (the defining spectrum sum and the affine-distance search) back
every fast path.
"""

from .bench import (
    BenchRecord,
    BenchVerificationError,
    SpeedupRow,
    read_csv,
    run_benchmark,
    speedup_report,
    write_csv,
)
from .memory import AllocationTracker, MemoryBudgetError, spectrum_allocations
from .nonlinearity import (
    METHODS,
    NonlinearityResult,
    SizeCapError,
    evaluate,
    nonlinearity_bruteforce,
    nonlinearity_from_maxima,
    nonlinearity_from_spectrum,
)
from .parallel import ColumnPartition, default_workers, fwht_parallel, partition_columns
from .sbox import (
    AES_SBOX,
    PolarityTruthTable,
    SBox,
    SBoxFormatError,
    aes_sbox,
    component_value,
    generate_sbox,
    identity_sbox,
    memory_estimate,
    parse_sbox,
    polarity_row,
    polarity_truth_table,
    render_sbox,
)
from .walsh import (
    ColumnMaxima,
    WalshSpectrum,
    fwht_column_in_place,
    fwht_fused,
    fwht_rowmajor,
    fwht_transposed,
    walsh_direct,
    write_spectrum,
)

__all__ = [
    "AES_SBOX",
    "AllocationTracker",
    "BenchRecord",
    "BenchVerificationError",
    "ColumnMaxima",
    "ColumnPartition",
    "METHODS",
    "MemoryBudgetError",
    "NonlinearityResult",
    "PolarityTruthTable",
    "SBox",
    "SBoxFormatError",
    "SizeCapError",
    "SpeedupRow",
    "WalshSpectrum",
    "aes_sbox",
    "component_value",
    "default_workers",
    "evaluate",
    "fwht_column_in_place",
    "fwht_fused",
    "fwht_parallel",
    "fwht_rowmajor",
    "fwht_transposed",
    "generate_sbox",
    "identity_sbox",
    "memory_estimate",
    "nonlinearity_bruteforce",
    "nonlinearity_from_maxima",
    "nonlinearity_from_spectrum",
    "parse_sbox",
    "partition_columns",
    "polarity_row",
    "polarity_truth_table",
    "read_csv",
    "render_sbox",
    "run_benchmark",
    "spectrum_allocations",
    "speedup_report",
    "walsh_direct",
    "write_csv",
    "write_spectrum",
]

__version__ = "0.1.0"
