#pragma once

#include <string>

#include "kdda/extractors.hpp"
#include "kdda/multiclass.hpp"
#include "kdda/svm.hpp"

namespace kdda {

/// Flat binary model container. All integers are little-endian and all
/// reals are raw IEEE-754 doubles, so a round trip is bit-faithful on any
/// platform we target. Each file stores exactly one model behind a shared
/// magic plus a kind tag; loading a file of the wrong kind is an IoError,
/// as is any truncated or corrupt payload.
///
/// Fit diagnostics on KddaModel are transient and deliberately not stored;
/// a reloaded model transforms identically but reports no diagnostics.

void save_kdda_model(const std::string& path, const KddaModel& model);
KddaModel load_kdda_model(const std::string& path);

void save_kpca_model(const std::string& path, const KpcaModel& model);
KpcaModel load_kpca_model(const std::string& path);

void save_svm_model(const std::string& path, const SvmModel& model);
SvmModel load_svm_model(const std::string& path);

void save_ovr_model(const std::string& path, const OvrModel& model);
OvrModel load_ovr_model(const std::string& path);

void save_pairwise_model(const std::string& path, const PairwiseModel& model);
PairwiseModel load_pairwise_model(const std::string& path);

void save_nn_model(const std::string& path, const NnModel& model);
NnModel load_nn_model(const std::string& path);

}  // namespace kdda
