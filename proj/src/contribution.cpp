#include "engram/contribution.hpp"

#include <algorithm>
#include <cmath>

namespace engram {

const char* contribution_kind_name(ContributionModel::Kind kind) {
  switch (kind) {
    case ContributionModel::Kind::Uniform: return "uniform";
    case ContributionModel::Kind::CorrelationSoftmax: return "correlation-softmax";
    case ContributionModel::Kind::OracleTask: return "oracle-task";
  }
  return "?";
}

ContributionModel::Kind parse_contribution_kind(const std::string& name) {
  using K = ContributionModel::Kind;
  for (K k : {K::Uniform, K::CorrelationSoftmax, K::OracleTask}) {
    if (name == contribution_kind_name(k)) return k;
  }
  throw ConfigError("unknown contribution model '" + name + "'");
}

void ContributionModel::validate() const {
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (!(off_task_weight >= 0.0)) throw ConfigError("off_task_weight must be non-negative");
}

ContributionWeights evaluate_contributions(const ContributionModel& model,
                                           const RetrievalResult& retrieved,
                                           const LabelOf& label_of, int current_label) {
  const auto rem = retrieved.remembered();
  ContributionWeights w;
  switch (model.kind) {
    case ContributionModel::Kind::Uniform:
      for (EngramId id : rem) w[id] = 1.0;
      break;

    case ContributionModel::Kind::CorrelationSoftmax: {
      if (rem.empty()) break;
      double top = -INFINITY;
      for (EngramId id : rem) top = std::max(top, retrieved.scores.at(id));
      double total = 0.0;
      for (EngramId id : rem) total += w[id] = std::exp((retrieved.scores.at(id) - top) / model.temperature);
      for (auto& [_, v] : w) v /= total;
      break;
    }

    case ContributionModel::Kind::OracleTask:
      if (!label_of) throw ContractError("oracle-task contributions need engram labels");
      for (EngramId id : rem) {
        const bool on_task = current_label >= 0 && label_of(id) == current_label;
        w[id] = on_task ? 1.0 : model.off_task_weight;
      }
      break;
  }
  return w;
}

}  // namespace engram
