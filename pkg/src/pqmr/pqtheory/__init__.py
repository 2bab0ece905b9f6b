from .checks import (
    check_pq, check_pre_special, check_rr_multifield, check_rr_multiring, is_pq_multiring,
    pre_special_laws,
)
from .corpus import CorpusSpec, corpus_manifest, enumerate_corpus, enumerate_size
from .crosscheck import CrossCheck, cross_check, hand_report
from .functors import (
    check_qj_identity, functor_j, functor_preservation_check, functor_q, functor_q_on_morphism,
    functor_q_quotient, is_pair_morphism,
)
from .integers import ComputablePair, check_integer_pair, window_quotient
from .pairs import (
    PqPair, check_pq_pair, check_preorder_pair, is_pq_pair, pair_from_dict, pair_from_json,
    pair_to_dict, product_pair,
)
from .proposition import PropositionReport, check_pqt_rr_implies_pqh
from .search import SearchResult, strictification_search

__all__ = [
    "ComputablePair", "CorpusSpec", "CrossCheck", "PqPair", "PropositionReport", "SearchResult",
    "check_integer_pair", "check_pq", "check_pq_pair", "check_pqt_rr_implies_pqh",
    "check_pre_special", "check_preorder_pair", "check_qj_identity", "check_rr_multifield",
    "check_rr_multiring", "corpus_manifest", "cross_check", "enumerate_corpus", "enumerate_size",
    "functor_j", "functor_preservation_check", "functor_q", "functor_q_on_morphism",
    "functor_q_quotient", "hand_report", "is_pair_morphism", "is_pq_multiring", "is_pq_pair",
    "pair_from_dict", "pair_from_json", "pair_to_dict", "pre_special_laws", "product_pair",
    "strictification_search", "window_quotient",
]
