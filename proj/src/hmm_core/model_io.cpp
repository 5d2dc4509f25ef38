#include "hsshmm/model_io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hsshmm/errors.hpp"

namespace hsshmm {

using nlohmann::json;

json to_json(const MetastateModelFile& file) {
  const auto& hmm = file.model;
  json emissions = json::array();
  for (const auto& mix : hmm.emissions()) {
    json weights = json::array(), means = json::array(), diags = json::array();
    for (const auto& c : mix.components()) {
      weights.push_back(c.weight);
      means.push_back(c.mean);
      diags.push_back(c.variance);
    }
    emissions.push_back({{"weights", weights}, {"means", means}, {"covariance_diagonals", diags}});
  }
  return json{{"label", file.label},
              {"N", hmm.num_states()},
              {"M", hmm.mixtures_per_state()},
              {"dimension", hmm.dimension()},
              {"initial", hmm.initial()},
              {"transition", hmm.transition().to_rows()},
              {"emissions", emissions},
              {"feature_order", file.feature_order},
              {"trained_at", file.trained_at},
              {"seed", file.seed}};
}

MetastateModelFile model_from_json(const json& doc, const std::vector<std::string>& expected_order) {
  try {
    const auto label = doc.at("label").get<std::string>();
    const auto n = doc.at("N").get<std::size_t>();
    const auto m = doc.at("M").get<std::size_t>();
    const auto dim = doc.at("dimension").get<std::size_t>();
    auto order = doc.at("feature_order").get<std::vector<std::string>>();

    if (order.size() != dim) throw ParseError("feature_order length differs from dimension");
    if (!expected_order.empty() && order != expected_order) {
      throw ParseError("model '" + label + "' feature_order does not match the expected order");
    }

    auto initial = doc.at("initial").get<std::vector<double>>();
    auto transition = Matrix::from_rows(doc.at("transition").get<std::vector<std::vector<double>>>());
    const auto& em = doc.at("emissions");
    if (initial.size() != n || transition.rows() != n || em.size() != n) {
      throw ParseError("model '" + label + "' state count disagrees with N");
    }

    std::vector<GaussianMixture> emissions;
    for (const auto& e : em) {
      const auto weights = e.at("weights").get<std::vector<double>>();
      const auto means = e.at("means").get<std::vector<std::vector<double>>>();
      const auto diags = e.at("covariance_diagonals").get<std::vector<std::vector<double>>>();
      if (weights.size() != m || means.size() != m || diags.size() != m) {
        throw ParseError("model '" + label + "' mixture size disagrees with M");
      }
      std::vector<GaussianComponent> comps;
      for (std::size_t k = 0; k < m; ++k) {
        if (means[k].size() != dim || diags[k].size() != dim) {
          throw ParseError("model '" + label + "' component dimension disagrees");
        }
        comps.push_back({weights[k], means[k], diags[k]});
      }
      // The file does not record the floor it was trained with; accept any
      // strictly positive variance.
      emissions.emplace_back(std::move(comps), std::numeric_limits<double>::min());
    }

    return MetastateModelFile{
        label,
        HiddenMarkovModel(std::move(initial), std::move(transition), std::move(emissions)),
        std::move(order), doc.value("trained_at", std::string{}), doc.value("seed", std::uint64_t{0})};
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model document: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("invalid model: ") + e.what());
  }
}

void save_model(const MetastateModelFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write model file " + path.string());
  out << std::setw(2) << to_json(file) << '\n';
  if (!out) throw Error("failed writing model file " + path.string());
}

MetastateModelFile load_model(const std::filesystem::path& path,
                              const std::vector<std::string>& expected_order) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return model_from_json(doc, expected_order);
}

std::string utc_timestamp_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace hsshmm
