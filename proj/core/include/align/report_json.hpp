#pragma once

#include <nlohmann/json.hpp>

#include "align/perm_struct.hpp"
#include "align/recovery.hpp"
#include "align/theory.hpp"

namespace align {

using Json = nlohmann::ordered_json;

Json to_json(const ModelParams& params);
Json to_json(const GoodnessReport& report);
Json to_json(const KCoreResult& core);
Json to_json(const FanoBound& fano);
Json to_json(const Thm2Conditions& c);
Json to_json(const GoodProbBound& b);
Json to_json(const CoreDiagnostics& d);
Json to_json(const TheoryReport& report);
Json to_json(const Permutation& pi);

/// {eps, s1_size, s21_size, cycles: [{group, k, count}]}, with one entry per
/// (group, size) present, ordered by size then group.
Json census_json(const CycleDecomposition& d);

}  // namespace align
