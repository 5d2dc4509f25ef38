#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hsshmm/context.hpp"
#include "hsshmm/hmm.hpp"
#include "hsshmm/matrix.hpp"
#include "hsshmm/registry.hpp"

#include "json.hpp"

namespace hsshmm {

// A DSS node: one labeled event class backed by a trained HMM.
struct Metastate {
  std::string id;
  std::shared_ptr<const HiddenMarkovModel> model;

  bool is_default() const;
};

// Self-transition probability used when a metastate FSM is built from scratch;
// the remainder is split evenly across the other metastates.
inline constexpr double kDefaultSelfTransition = 0.8;

// Metastate list + metastate-level FSM + the context the configuration is
// bound to. Immutable; graft/prune return new configurations.
class DssConfiguration {
 public:
  // Throws if ids repeat, Continue is absent, or the FSM is not a
  // row-stochastic |S| x |S| matrix.
  DssConfiguration(std::vector<Metastate> metastates, Matrix fsm, ContextState context);

  static DssConfiguration with_default_fsm(std::vector<Metastate> metastates,
                                           ContextState context);

  const std::vector<Metastate>& metastates() const noexcept { return metastates_; }
  const Matrix& fsm() const noexcept { return fsm_; }
  const ContextState& context() const noexcept { return context_; }
  std::size_t size() const noexcept { return metastates_.size(); }

  bool contains(std::string_view id) const;
  // Position of `id` or size() when absent.
  std::size_t index_of(std::string_view id) const;
  std::vector<std::string> ids() const;

 private:
  std::vector<Metastate> metastates_;
  Matrix fsm_;
  ContextState context_;
};

Matrix default_metastate_fsm(std::size_t n);

// How the metastate FSM absorbs a grafted metastate.
enum class RowPolicy {
  // Every existing row is scaled by (1 - 1/|S'|) and the new column receives
  // 1/|S'|; the new metastate's row is uniform.
  kUniformIncoming,
  // Discard the old FSM and rebuild default_metastate_fsm(|S'|).
  kResetDefaults,
};

// Appends `m`. Throws DuplicateMetastateError when its id is present.
DssConfiguration graft(const DssConfiguration& dss, Metastate m,
                       RowPolicy policy = RowPolicy::kUniformIncoming);

// Removes `id`, redistributing each row's mass on the removed column across
// the surviving entries in proportion. Throws UnknownMetastateError or
// ProtectedMetastateError (Continue).
DssConfiguration prune(const DssConfiguration& dss, std::string_view id);

// Simultaneous modification, defined as serial application in the given order.
DssConfiguration graft_all(const DssConfiguration& dss, const std::vector<Metastate>& ms,
                           RowPolicy policy = RowPolicy::kUniformIncoming);
DssConfiguration prune_all(const DssConfiguration& dss, const std::vector<std::string>& ids);

struct ModificationEvent {
  enum class Kind { kGraft, kPrune };

  Kind kind = Kind::kGraft;
  std::string metastate_id;
  double timestamp = 0.0;
  ContextState from;
  ContextState to;

  friend bool operator==(const ModificationEvent&, const ModificationEvent&) = default;
};

// "graft:<id>" / "prune:<id>"
std::string to_string(const ModificationEvent& e);

// Which metastates each road condition demands, in configuration order.
class ContextMap {
 public:
  // Intersection -> {Continue, Left Turn, Right Turn, Stop}
  // Highway      -> {Continue, Left Lane Change, Right Lane Change,
  //                  Enter Highway, Exit Highway}
  // Road         -> {Continue, Left Lane Change, Right Lane Change, Stop}
  static ContextMap defaults();
  // {"Intersection": [...], "Highway": [...], "Road": [...]}; every list
  // must contain Continue. Throws ParseError.
  static ContextMap from_json(const nlohmann::json& doc);

  const std::vector<std::string>& ids_for(RoadCondition rcs) const;
  // Every id any road condition demands.
  std::vector<std::string> all_ids() const;

 private:
  std::map<RoadCondition, std::vector<std::string>> ids_;
};

// The canonical configuration for a context, with the default FSM.
// Throws MissingModelError naming the first id without a trained model.
DssConfiguration dss_for_context(const ContextState& ctx, const MetastateRegistry& registry,
                                 const ContextMap& map = ContextMap::defaults());

struct ContextChange {
  DssConfiguration dss;
  std::vector<ModificationEvent> events;
};

// Reconfigures `dss` for `to`. Prunes come first, in the current
// configuration's order; grafts follow in reverse target-list order. The
// returned configuration is dss_for_context(to).
ContextChange apply_context_change(const DssConfiguration& dss, const ContextState& from,
                                   const ContextState& to, const MetastateRegistry& registry,
                                   const ContextMap& map = ContextMap::defaults(),
                                   double timestamp = 0.0);

}  // namespace hsshmm
