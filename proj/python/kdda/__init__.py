"""Kernel discriminant feature extraction and SVM classification.

Thin re-export of the compiled extension; see the README for the C++
library and the experiment CLI.
"""

from ._kdda import (
    KddaModel,
    KpcaModel,
    NnModel,
    OvrModel,
    PairwiseModel,
    SvmModel,
    __version__,
    kdda_fit,
    kpca_fit,
    load_kdda_model,
    load_svm_model,
    make_rings,
    nn_train,
    ovr_train,
    pairwise_train,
    run_config,
    save_kdda_model,
    save_svm_model,
    split_per_class,
    svm_train,
)

__all__ = [
    "KddaModel",
    "KpcaModel",
    "NnModel",
    "OvrModel",
    "PairwiseModel",
    "SvmModel",
    "__version__",
    "kdda_fit",
    "kpca_fit",
    "load_kdda_model",
    "load_svm_model",
    "make_rings",
    "nn_train",
    "ovr_train",
    "pairwise_train",
    "run_config",
    "save_kdda_model",
    "save_svm_model",
    "split_per_class",
    "svm_train",
]
