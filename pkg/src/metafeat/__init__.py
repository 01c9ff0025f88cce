"""Meta-feature extraction for tabular classification datasets."""

from .dataset import (
    Column, Dataset, MissingValues, ParseError, UnknownTarget,
    binarize, discretize, from_arrays, load_dataset, rescale_minmax, split_by_class,
)
from .engine import ExtractionConfig, MetaFeatureRecord, run_corpus, run_extraction
from .summary import MeasureResult, SummarizerSpec, apply_measure_default, summarize

__version__ = "0.1.0"

__all__ = [
    "Column", "Dataset", "ExtractionConfig", "MeasureResult", "MetaFeatureRecord",
    "MissingValues", "ParseError", "SummarizerSpec", "UnknownTarget",
    "apply_measure_default", "binarize", "discretize", "from_arrays", "load_dataset",
    "rescale_minmax", "run_corpus", "run_extraction", "split_by_class", "summarize",
]
