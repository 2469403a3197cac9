#pragma once

#include <string>

#include "classifier.hpp"
#include "simulate.hpp"

namespace fdb {

std::string eigenmodel_to_json(const EigenModel& model);
EigenModel eigenmodel_from_json(const std::string& text);

std::string classifier_to_json(const TrainedClassifier& clf);
TrainedClassifier classifier_from_json(const std::string& text);

void save_classifier(const TrainedClassifier& clf, const std::string& path);
TrainedClassifier load_classifier(const std::string& path);

/// Scenario JSON mirrors SimScenario. Eigenvalue sequences are either an
/// explicit array or the string form "exp(-j/D)".
SimScenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const SimScenario& scn);

}  // namespace fdb
