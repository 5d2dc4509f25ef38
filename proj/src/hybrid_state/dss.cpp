#include "hsshmm/dss.hpp"

#include <algorithm>
#include <set>

#include "hsshmm/catalog.hpp"
#include "hsshmm/errors.hpp"

namespace hsshmm {

bool Metastate::is_default() const { return id == kContinueId; }

DssConfiguration::DssConfiguration(std::vector<Metastate> metastates, Matrix fsm,
                                   ContextState context)
    : metastates_(std::move(metastates)), fsm_(std::move(fsm)), context_(context) {
  std::set<std::string_view> seen;
  std::size_t defaults = 0;
  for (const auto& m : metastates_) {
    if (!seen.insert(m.id).second) throw DuplicateMetastateError("duplicate metastate '" + m.id + "'");
    if (!m.model) throw MissingModelError(m.id);
    if (m.is_default()) ++defaults;
  }
  if (defaults != 1) throw Error("a DSS configuration must contain the Continue metastate");
  if (fsm_.rows() != metastates_.size() || fsm_.cols() != metastates_.size()) {
    throw DimensionError("metastate FSM must be |S| x |S|");
  }
  if (!is_row_stochastic(fsm_)) throw StochasticityError("metastate FSM is not row-stochastic");
}

DssConfiguration DssConfiguration::with_default_fsm(std::vector<Metastate> metastates,
                                                    ContextState context) {
  const std::size_t n = metastates.size();
  return DssConfiguration(std::move(metastates), default_metastate_fsm(n), context);
}

bool DssConfiguration::contains(std::string_view id) const { return index_of(id) < size(); }

std::size_t DssConfiguration::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < metastates_.size(); ++i) {
    if (metastates_[i].id == id) return i;
  }
  return metastates_.size();
}

std::vector<std::string> DssConfiguration::ids() const {
  std::vector<std::string> out;
  out.reserve(metastates_.size());
  for (const auto& m : metastates_) out.push_back(m.id);
  return out;
}

Matrix default_metastate_fsm(std::size_t n) {
  if (n == 1) return Matrix::identity(1);
  const double other = (1.0 - kDefaultSelfTransition) / static_cast<double>(n - 1);
  Matrix fsm(n, n, other);
  for (std::size_t i = 0; i < n; ++i) fsm(i, i) = kDefaultSelfTransition;
  return fsm;
}

DssConfiguration graft(const DssConfiguration& dss, Metastate m, RowPolicy policy) {
  if (dss.contains(m.id)) {
    throw DuplicateMetastateError("metastate '" + m.id + "' is already in the DSS");
  }
  const std::size_t n = dss.size();
  const std::size_t grown = n + 1;

  Matrix fsm;
  if (policy == RowPolicy::kResetDefaults) {
    fsm = default_metastate_fsm(grown);
  } else {
    const double share = 1.0 / static_cast<double>(grown);
    fsm = Matrix(grown, grown);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) fsm(i, j) = dss.fsm()(i, j) * (1.0 - share);
      fsm(i, n) = share;
    }
    for (std::size_t j = 0; j < grown; ++j) fsm(n, j) = share;
  }

  auto metastates = dss.metastates();
  metastates.push_back(std::move(m));
  return DssConfiguration(std::move(metastates), std::move(fsm), dss.context());
}

DssConfiguration prune(const DssConfiguration& dss, std::string_view id) {
  const std::size_t victim = dss.index_of(id);
  if (victim == dss.size()) {
    throw UnknownMetastateError("metastate '" + std::string(id) + "' is not in the DSS");
  }
  if (dss.metastates()[victim].is_default()) {
    throw ProtectedMetastateError("the Continue metastate cannot be pruned");
  }

  const std::size_t n = dss.size() - 1;
  Matrix fsm(n, n);
  for (std::size_t i = 0, r = 0; i <= n; ++i) {
    if (i == victim) continue;
    double kept = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j != victim) kept += dss.fsm()(i, j);
    }
    for (std::size_t j = 0, c = 0; j <= n; ++j) {
      if (j == victim) continue;
      // A row whose whole mass sat on the removed column becomes uniform.
      fsm(r, c++) = kept > 0.0 ? dss.fsm()(i, j) / kept : 1.0 / static_cast<double>(n);
    }
    ++r;
  }

  auto metastates = dss.metastates();
  metastates.erase(metastates.begin() + static_cast<std::ptrdiff_t>(victim));
  return DssConfiguration(std::move(metastates), std::move(fsm), dss.context());
}

DssConfiguration graft_all(const DssConfiguration& dss, const std::vector<Metastate>& ms,
                           RowPolicy policy) {
  DssConfiguration out = dss;
  for (const auto& m : ms) out = graft(out, m, policy);
  return out;
}

DssConfiguration prune_all(const DssConfiguration& dss, const std::vector<std::string>& ids) {
  DssConfiguration out = dss;
  for (const auto& id : ids) out = prune(out, id);
  return out;
}

std::string to_string(const ModificationEvent& e) {
  return (e.kind == ModificationEvent::Kind::kGraft ? "graft:" : "prune:") + e.metastate_id;
}

ContextMap ContextMap::defaults() {
  const auto l = [](EventKind k) { return std::string(label(k)); };
  ContextMap map;
  map.ids_[RoadCondition::kIntersection] = {l(EventKind::kContinue), l(EventKind::kLeftTurn),
                                            l(EventKind::kRightTurn), l(EventKind::kStop)};
  map.ids_[RoadCondition::kHighway] = {l(EventKind::kContinue), l(EventKind::kLeftLaneChange),
                                       l(EventKind::kRightLaneChange), l(EventKind::kEnterHighway),
                                       l(EventKind::kExitHighway)};
  map.ids_[RoadCondition::kRoad] = {l(EventKind::kContinue), l(EventKind::kLeftLaneChange),
                                    l(EventKind::kRightLaneChange), l(EventKind::kStop)};
  return map;
}

ContextMap ContextMap::from_json(const nlohmann::json& doc) {
  ContextMap map;
  try {
    for (const auto& [key, value] : doc.items()) {
      const auto rcs = parse_road_condition(key);
      if (!rcs) throw ParseError("unknown road condition '" + key + "' in context map");
      auto ids = value.get<std::vector<std::string>>();
      if (std::find(ids.begin(), ids.end(), kContinueId) == ids.end()) {
        throw ParseError("context map entry '" + key + "' lacks Continue");
      }
      if (std::set<std::string>(ids.begin(), ids.end()).size() != ids.size()) {
        throw ParseError("context map entry '" + key + "' repeats an id");
      }
      map.ids_[*rcs] = std::move(ids);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed context map: ") + e.what());
  }
  for (RoadCondition rcs :
       {RoadCondition::kIntersection, RoadCondition::kHighway, RoadCondition::kRoad}) {
    if (!map.ids_.contains(rcs)) {
      throw ParseError("context map has no entry for " + std::string(to_string(rcs)));
    }
  }
  return map;
}

const std::vector<std::string>& ContextMap::ids_for(RoadCondition rcs) const {
  return ids_.at(rcs);
}

std::vector<std::string> ContextMap::all_ids() const {
  std::vector<std::string> out;
  for (const auto& [_, ids] : ids_) {
    for (const auto& id : ids) {
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  }
  return out;
}

DssConfiguration dss_for_context(const ContextState& ctx, const MetastateRegistry& registry,
                                 const ContextMap& map) {
  std::vector<Metastate> metastates;
  for (const auto& id : map.ids_for(ctx.rcs)) metastates.push_back({id, registry.at(id)});
  return DssConfiguration::with_default_fsm(std::move(metastates), ctx);
}

ContextChange apply_context_change(const DssConfiguration& dss, const ContextState& from,
                                   const ContextState& to, const MetastateRegistry& registry,
                                   const ContextMap& map, double timestamp) {
  if (from == to) return {dss, {}};

  DssConfiguration target = dss_for_context(to, registry, map);
  std::vector<ModificationEvent> events;
  DssConfiguration current = dss;
  for (const auto& m : dss.metastates()) {
    if (target.contains(m.id)) continue;
    current = prune(current, m.id);
    events.push_back({ModificationEvent::Kind::kPrune, m.id, timestamp, from, to});
  }
  const auto& wanted = target.metastates();
  for (auto it = wanted.rbegin(); it != wanted.rend(); ++it) {
    if (current.contains(it->id)) continue;
    current = graft(current, *it);
    events.push_back({ModificationEvent::Kind::kGraft, it->id, timestamp, from, to});
  }
  return {std::move(target), std::move(events)};
}

}  // namespace hsshmm
