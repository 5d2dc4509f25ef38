#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsshmm/hmm.hpp"

namespace hsshmm {

// On-disk form of one trained metastate model:
//   {label, N, M, dimension, initial[], transition[][],
//    emissions[{weights[], means[][], covariance_diagonals[][]}],
//    feature_order[], trained_at, seed}
struct MetastateModelFile {
  std::string label;
  HiddenMarkovModel model;
  std::vector<std::string> feature_order;
  std::string trained_at;  // ISO-8601 UTC
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const MetastateModelFile& file);

// Parses and validates a model document. When `expected_order` is non-empty
// the document's feature_order must match it exactly. Throws ParseError.
MetastateModelFile model_from_json(const nlohmann::json& doc,
                                   const std::vector<std::string>& expected_order = {});

void save_model(const MetastateModelFile& file, const std::filesystem::path& path);
MetastateModelFile load_model(const std::filesystem::path& path,
                              const std::vector<std::string>& expected_order = {});

std::string utc_timestamp_now();

}  // namespace hsshmm
