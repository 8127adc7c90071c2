#pragma once

#include <functional>
#include <string>

#include "engram/lifecycle.hpp"

namespace engram {

/// Surrogates for the exploit stage's attention-derived usefulness signal.
///
///  uniform              every retrieved engram weighs 1
///  correlation-softmax  w_i proportional to exp(C_i / temperature)
///  oracle-task          1 for engrams sharing the current step's topic label,
///                       off_task_weight for the rest
struct ContributionModel {
  enum class Kind { Uniform, CorrelationSoftmax, OracleTask };
  Kind kind = Kind::Uniform;
  double temperature = 1.0;
  double off_task_weight = 0.05;

  void validate() const;
};

const char* contribution_kind_name(ContributionModel::Kind kind);
ContributionModel::Kind parse_contribution_kind(const std::string& name);

using LabelOf = std::function<int(EngramId)>;

/// Weights for M^rem of `retrieved`. `label_of` and `current_label` are only
/// consulted by oracle-task.
ContributionWeights evaluate_contributions(const ContributionModel& model,
                                           const RetrievalResult& retrieved,
                                           const LabelOf& label_of = {}, int current_label = -1);

}  // namespace engram
