#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hsshmm/hmm.hpp"

namespace hsshmm {

// Read-only store of trained metastate models keyed by label.
class MetastateRegistry {
 public:
  using ModelPtr = std::shared_ptr<const HiddenMarkovModel>;

  void add(std::string id, HiddenMarkovModel model);
  void add(std::string id, ModelPtr model);

  bool contains(const std::string& id) const { return models_.contains(id); }
  // Throws MissingModelError.
  const ModelPtr& at(const std::string& id) const;
  std::vector<std::string> ids() const;
  std::size_t size() const noexcept { return models_.size(); }

  // Loads every *.json model in `dir`. The label stored inside each file is
  // the registry key; files must share `expected_order`.
  static MetastateRegistry load_directory(const std::filesystem::path& dir,
                                          const std::vector<std::string>& expected_order);

 private:
  std::map<std::string, ModelPtr> models_;
};

}  // namespace hsshmm
