#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "discotrace/ontology.hpp"
#include "discotrace/trace_pipeline.hpp"

namespace discotrace {

struct AgreementReport {
  double kappa = 0.0;
  double observed = 0.0;  // p_o
  double expected = 0.0;  // p_e
  std::size_t n_items = 0;
  std::string label_space;  // "act" or "family"
  // Both raters used one identical label throughout (p_e = 1); kappa is set to 1.
  bool degenerate = false;

  nlohmann::ordered_json to_json() const;
};

// Throws Error(LengthMismatch) for lists of different length and
// Error(InvalidArgument) for empty lists.
AgreementReport cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b,
                             std::string label_space = "act");

struct ChiSquaredResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Pearson test of independence on a 2x2 table, no continuity correction.
// A table with an empty row or column gives statistic 0 and p 1.
ChiSquaredResult chi_squared_2x2(const std::array<std::array<double, 2>, 2>& table);

// Upper tail of the chi-squared distribution with one degree of freedom.
double chi_squared_sf_df1(double statistic);

bool bonferroni_significant(double p_value, double alpha, std::size_t n_tests);

struct ActProportion {
  std::string act_id;
  std::size_t count_a = 0;  // answers containing the act
  std::size_t count_b = 0;
  double prop_a = 0.0;
  double prop_b = 0.0;
  double chi_squared = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct ActProportionReport {
  double alpha = 0.05;
  std::size_t n_tests = 0;
  std::vector<ActProportion> rows;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

// One test per non-NONE ontology act (or family under Projection::Family);
// significance is judged at alpha / n_tests. Throws Error(EmptyCorpus).
ActProportionReport act_proportion_test(const std::vector<DiscoTrace>& corpus_a,
                                        const std::vector<DiscoTrace>& corpus_b,
                                        const Ontology& ontology, double alpha = 0.05,
                                        bool family_level = false);

}  // namespace discotrace
