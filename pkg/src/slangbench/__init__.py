"""slangbench: compare human and LLM-generated slang usages.

Library surface re-exported here; the CLI lives in :mod:`slangbench.cli`.
"""

__version__ = "0.1.0"

from .corpus import (
    COINAGE,
    REUSE,
    ConvLevel,
    ConventionalizationLabel,
    SlangUsage,
    classify_usage_type,
    content_word_overlap,
    conventionalization,
    load_corpus,
    read_corpus,
    sample_one_per_term,
    save_corpus,
    usage_type_proportions,
)
from .dedup import DedupState, SenseCluster, cluster_representative, cluster_senses, is_duplicate
from .embedding import (
    CachedEmbedder,
    HashEmbedder,
    RemoteEmbedder,
    cosine,
    l2_distance,
    mean_vector,
    normalize,
)
from .evalharness import (
    FreeformItem,
    GradeReport,
    McqItem,
    build_cloze_item,
    build_freeform_item,
    build_interpretation_item,
    grade_freeform,
    grade_mcq,
    sample_eval_set,
)
from .genpipe import (
    ChatClient,
    ControlledTarget,
    GenerationJob,
    GenerationResult,
    HttpChatClient,
    ReplayChatClient,
    TranscriptRecorder,
    generate_controlled,
    generate_uncontrolled,
    parse_generation,
)
from .lexicon import Lexicon, LexiconEntry, Sense, informal_senses, ingest_dump, read_lexicon
from .metrics import LmScorer, RemoteLmScorer, SummaryStats, coherence, novelty, summarize, surprisal
from .morph import (
    BaselineSegmenter,
    FormationLabel,
    Segmentation,
    TableSegmenter,
    classify_formation,
    complexity,
    load_segmentation_table,
    train_baseline_segmenter,
)
from .prompts import load_template, render_template
from .topics import TopicModel, fit_lda, top_words
