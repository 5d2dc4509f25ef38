#include "hsshmm/registry.hpp"

#include <algorithm>

#include "hsshmm/errors.hpp"
#include "hsshmm/model_io.hpp"

namespace hsshmm {

void MetastateRegistry::add(std::string id, HiddenMarkovModel model) {
  add(std::move(id), std::make_shared<const HiddenMarkovModel>(std::move(model)));
}

void MetastateRegistry::add(std::string id, ModelPtr model) {
  if (!model) throw Error("registry entry '" + id + "' has no model");
  if (!models_.empty() && models_.begin()->second->dimension() != model->dimension()) {
    throw DimensionError("model '" + id + "' dimension differs from the registry");
  }
  models_[std::move(id)] = std::move(model);
}

const MetastateRegistry::ModelPtr& MetastateRegistry::at(const std::string& id) const {
  const auto it = models_.find(id);
  if (it == models_.end()) throw MissingModelError(id);
  return it->second;
}

std::vector<std::string> MetastateRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : models_) out.push_back(id);
  return out;
}

MetastateRegistry MetastateRegistry::load_directory(const std::filesystem::path& dir,
                                                    const std::vector<std::string>& expected_order) {
  if (!std::filesystem::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  MetastateRegistry registry;
  for (const auto& f : files) {
    auto file = load_model(f, expected_order);
    if (registry.contains(file.label)) {
      throw DuplicateMetastateError("two model files carry label '" + file.label + "'");
    }
    registry.add(file.label, std::move(file.model));
  }
  return registry;
}

}  // namespace hsshmm
