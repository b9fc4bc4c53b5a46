#include "align/report_json.hpp"

#include <string>

namespace align {
namespace {

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
Json optional_struct(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const ModelParams& params) {
  return Json{{"n", params.n}, {"q", params.q}, {"s", params.s}};
}

Json to_json(const Permutation& pi) {
  return Json(std::vector<NodeId>(pi.image().begin(), pi.image().end()));
}

Json to_json(const GoodnessReport& report) {
  Json hist = Json::object();
  for (const auto& [degree, count] : report.degree_histogram) {
    hist[std::to_string(degree)] = count;
  }
  return Json{{"threshold_degree", report.threshold_degree},
              {"count_high_degree", report.count_high_degree},
              {"required", report.required},
              {"is_good", report.is_good},
              {"degree_histogram", std::move(hist)}};
}

Json to_json(const KCoreResult& core) {
  return Json{{"k", core.k},
              {"size", core.members.size()},
              {"fraction", core.fraction},
              {"members", core.members}};
}

Json to_json(const FanoBound& fano) {
  return Json{{"raw", fano.raw},
              {"clamped", fano.clamped},
              {"kl", fano.kl},
              {"log_m_ratio", fano.log_m_ratio},
              {"exact_counting", fano.exact_counting}};
}

Json to_json(const Thm2Conditions& c) {
  return Json{{"c1", c.c1},
              {"c2", c.c2},
              {"c3", c.c3},
              {"c4", c.c4},
              {"all", c.all()},
              {"c1_threshold", c.c1_threshold},
              {"c1_margin", c.c1_margin},
              {"c2_margin", c.c2_margin},
              {"c3_margin", c.c3_margin},
              {"c4_margin", c.c4_margin}};
}

Json to_json(const GoodProbBound& b) {
  return Json{{"tau", b.tau},
              {"q1", b.q1},
              {"q2", b.q2},
              {"zeta", b.zeta},
              {"log_bound", b.log_bound},
              {"bound", optional_json(b.bound)},
              {"log_union", b.log_union},
              {"asymptotic_exponent", optional_json(b.asymptotic_exponent)}};
}

Json to_json(const CoreDiagnostics& d) {
  return Json{{"k", d.k},
              {"c_k", d.c_k},
              {"above_threshold", d.above_threshold},
              {"mu", optional_json(d.mu)},
              {"core_fraction", optional_json(d.core_fraction)},
              {"target_fraction", d.target_fraction},
              {"chernoff_floor", d.chernoff_floor},
              {"psi_at_two_thirds", d.psi_at_two_thirds}};
}

Json to_json(const TheoryReport& r) {
  return Json{{"params", to_json(r.params)},
              {"alpha", r.alpha},
              {"beta", optional_json(r.beta)},
              {"gamma", optional_json(r.gamma)},
              {"nqs", r.nqs},
              {"kl", r.kl},
              {"fano_raw", r.fano_raw},
              {"fano_clamped", r.fano_clamped},
              {"log_m_ratio", r.log_m_ratio},
              {"thm1_ratio", r.thm1_ratio},
              {"thm2_conditions", optional_struct(r.thm2)},
              {"good_prob_bound", optional_struct(r.good_prob)},
              {"core", optional_struct(r.core)}};
}

Json census_json(const CycleDecomposition& d) {
  Json cycles = Json::array();
  for (const auto& [k, entry] : d.census) {
    const std::pair<const char*, std::size_t> groups[] = {
        {"G1", entry.paired}, {"G2", entry.twin}, {"G3", entry.star}};
    for (const auto& [name, count] : groups) {
      if (count) cycles.push_back(Json{{"group", name}, {"k", k}, {"count", count}});
    }
  }
  return Json{{"eps", d.eps.value()},
              {"s1_size", d.s1.size()},
              {"s21_size", d.s21.size()},
              {"s22_size", d.s22_size()},
              {"cycles", std::move(cycles)}};
}

}  // namespace align
