"""Source file summarization by folding uninformative regions."""

from .folding import (
    FoldPlan,
    SummaryState,
    TopicScorer,
    VsmScorer,
    brute_force_optimal,
    compute_budget,
    greedy_fold,
    kl_divergence,
    summary_unigram,
)
from .regions import (
    FoldableNode,
    FoldableTree,
    LexToken,
    NodeKind,
    TokenKind,
    build_foldable_tree,
    lex,
    node_cost,
    parse_source,
    render_folded,
)
from .tokens import Corpus, Vocabulary, build_corpus, extract_content_tokens, parse_file, split_identifier
from .topicmodel import GibbsState, Hyperparams, TrainConfig, TrainedModel, train
from .vsm import cosine, log_tf

__version__ = "0.1.0"
