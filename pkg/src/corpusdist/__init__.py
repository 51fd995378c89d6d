"""corpusdist: chi-square comparability distances between corpus sections.

Builds relative-frequency profiles from TMX or plain-text sections,
computes directed and symmetric chi-square distances, assembles labeled
distance matrices, and meta-evaluates metric variants by correlating
source-side against target-side distances over parallel collections.
"""

from .errors import (
    ComparabilityWarning,
    ConfigError,
    CorpusDistError,
    DataError,
    EmptyCorpusError,
    EncodingError,
    LanguageNotFoundError,
    TmxContentError,
    TmxParseError,
    UndefinedCorrelationError,
)
from .ingest import (
    Corpus,
    ParallelDocument,
    TranslationUnit,
    extract_side,
    parse_tmx,
    read_plaintext,
    tokenize,
)
from .frequency import FrequencyList, TopList, build_frequency_list, profile_csv, top_n
from .distance import (
    DistancePair,
    MetricConfig,
    SYMMETRIC_DISJOINT_SENTINEL,
    chi2_directed,
    chi2_symmetric_common,
    combine,
    distance_pair,
)
from .matrix import (
    AgreementReport,
    DistanceMatrix,
    Section,
    label_agreement,
    pairwise_matrix,
    render_heatmap,
    render_matrix_csv,
)
from .metaeval import (
    MetaEvalReport,
    VariantResult,
    export_scatter,
    metaeval_report,
    pearson_r,
    side_distance_vectors,
)
from .synth import (
    DomainModel,
    SectionInfo,
    SynthConfig,
    generate_collection,
    write_collection,
    write_tmx,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "ComparabilityWarning",
    "ConfigError",
    "CorpusDistError",
    "DataError",
    "EmptyCorpusError",
    "EncodingError",
    "LanguageNotFoundError",
    "TmxContentError",
    "TmxParseError",
    "UndefinedCorrelationError",
    "Corpus",
    "ParallelDocument",
    "TranslationUnit",
    "extract_side",
    "parse_tmx",
    "read_plaintext",
    "tokenize",
    "FrequencyList",
    "TopList",
    "build_frequency_list",
    "profile_csv",
    "top_n",
    "DistancePair",
    "MetricConfig",
    "SYMMETRIC_DISJOINT_SENTINEL",
    "chi2_directed",
    "chi2_symmetric_common",
    "combine",
    "distance_pair",
    "AgreementReport",
    "DistanceMatrix",
    "Section",
    "label_agreement",
    "pairwise_matrix",
    "render_heatmap",
    "render_matrix_csv",
    "MetaEvalReport",
    "VariantResult",
    "export_scatter",
    "metaeval_report",
    "pearson_r",
    "side_distance_vectors",
    "DomainModel",
    "SectionInfo",
    "SynthConfig",
    "generate_collection",
    "write_collection",
    "write_tmx",
]
