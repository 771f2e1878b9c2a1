#include "discotrace/agreement.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "discotrace/error.hpp"

namespace discotrace {

nlohmann::ordered_json AgreementReport::to_json() const {
  nlohmann::ordered_json j;
  j["kappa"] = kappa;
  j["observed"] = observed;
  j["expected"] = expected;
  j["n_items"] = n_items;
  j["label_space"] = label_space;
  j["degenerate"] = degenerate;
  return j;
}

AgreementReport cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                             std::string label_space) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "label lists have " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()) + " items");
  }
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "kappa needs at least one item");

  std::map<std::string, std::size_t> margin_a, margin_b;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++margin_a[a[i]];
    ++margin_b[b[i]];
    if (a[i] == b[i]) ++agree;
  }
  const double n = static_cast<double>(a.size());
  double expected = 0.0;
  for (const auto& [label, count] : margin_a) {
    auto it = margin_b.find(label);
    if (it != margin_b.end()) expected += (count / n) * (it->second / n);
  }

  AgreementReport report;
  report.n_items = a.size();
  report.label_space = std::move(label_space);
  report.observed = agree / n;
  report.expected = expected;
  if (margin_a.size() == 1 && margin_b.size() == 1 && margin_a.begin()->first == margin_b.begin()->first) {
    report.degenerate = true;
    report.kappa = 1.0;
  } else {
    report.kappa = (report.observed - expected) / (1.0 - expected);
  }
  return report;
}

double chi_squared_sf_df1(double statistic) {
  if (!(statistic > 0.0)) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

ChiSquaredResult chi_squared_2x2(const std::array<std::array<double, 2>, 2>& table) {
  const double row0 = table[0][0] + table[0][1];
  const double row1 = table[1][0] + table[1][1];
  const double col0 = table[0][0] + table[1][0];
  const double col1 = table[0][1] + table[1][1];
  const double total = row0 + row1;
  ChiSquaredResult result;
  if (row0 <= 0.0 || row1 <= 0.0 || col0 <= 0.0 || col1 <= 0.0) return result;
  const double rows[2] = {row0, row1};
  const double cols[2] = {col0, col1};
  double stat = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const double expected = rows[r] * cols[c] / total;
      const double diff = table[r][c] - expected;
      stat += diff * diff / expected;
    }
  }
  result.statistic = stat;
  result.p_value = chi_squared_sf_df1(stat);
  return result;
}

bool bonferroni_significant(double p_value, double alpha, std::size_t n_tests) {
  if (n_tests == 0) return false;
  return p_value < alpha / static_cast<double>(n_tests);
}

ActProportionReport act_proportion_test(const std::vector<DiscoTrace>& corpus_a,
                                        const std::vector<DiscoTrace>& corpus_b,
                                        const Ontology& ontology, double alpha,
                                        bool family_level) {
  if (corpus_a.empty() || corpus_b.empty()) {
    throw Error(ErrorCode::EmptyCorpus, "both corpora need at least one answer");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  }
  const auto token = [&](const std::string& act) {
    return family_level ? ontology.family_token(act) : act;
  };
  std::vector<std::string> tested;
  if (family_level) {
    tested = {"AQ", "CQ", "SI", "RQ", "NO"};
  } else {
    for (const auto& id : ontology.act_ids()) {
      if (id != kNoneAct) tested.push_back(id);
    }
  }
  const auto presence = [&](const std::vector<DiscoTrace>& corpus) {
    std::map<std::string, std::size_t> counts;
    for (const auto& trace : corpus) {
      std::set<std::string> seen;
      for (const auto& step : trace.steps) seen.insert(token(step.act_id));
      for (const auto& t : seen) ++counts[t];
    }
    return counts;
  };
  const auto in_a = presence(corpus_a);
  const auto in_b = presence(corpus_b);
  const double n_a = static_cast<double>(corpus_a.size());
  const double n_b = static_cast<double>(corpus_b.size());

  ActProportionReport report;
  report.alpha = alpha;
  report.n_tests = tested.size();
  for (const auto& act : tested) {
    ActProportion row;
    row.act_id = act;
    if (auto it = in_a.find(act); it != in_a.end()) row.count_a = it->second;
    if (auto it = in_b.find(act); it != in_b.end()) row.count_b = it->second;
    row.prop_a = row.count_a / n_a;
    row.prop_b = row.count_b / n_b;
    const auto chi = chi_squared_2x2({{{double(row.count_a), n_a - row.count_a},
                                       {double(row.count_b), n_b - row.count_b}}});
    row.chi_squared = chi.statistic;
    row.p_value = chi.p_value;
    row.significant = bonferroni_significant(row.p_value, alpha, report.n_tests);
    report.rows.push_back(std::move(row));
  }
  return report;
}

nlohmann::ordered_json ActProportionReport::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["n_tests"] = n_tests;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["act_id"] = r.act_id;
    row["count_a"] = r.count_a;
    row["count_b"] = r.count_b;
    row["prop_a"] = r.prop_a;
    row["prop_b"] = r.prop_b;
    row["chi_squared"] = r.chi_squared;
    row["p_value"] = r.p_value;
    row["significant"] = r.significant;
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string ActProportionReport::to_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "act_id,count_a,count_b,prop_a,prop_b,chi_squared,p_value,significant\n";
  for (const auto& r : rows) {
    out << r.act_id << ',' << r.count_a << ',' << r.count_b << ',' << r.prop_a << ','
        << r.prop_b << ',' << r.chi_squared << ',' << r.p_value << ','
        << (r.significant ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace discotrace
