#include "discotrace/interpretation_metrics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

// Sample standard deviation; 0 below two values.
MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / (n - 1.0));
  return out;
}

const InterpretationSpace& space_for(const SpaceMap& spaces, const DiscoTrace& trace) {
  auto it = spaces.find(trace.question_id);
  if (it == spaces.end()) {
    throw Error(ErrorCode::UnknownSpaceReference,
                "no interpretation space for question " + trace.question_id);
  }
  for (const auto& step : trace.steps) {
    if (step.interpretation_id && !it->second.find(*step.interpretation_id)) {
      throw Error(ErrorCode::UnknownSpaceReference,
                  "answer " + trace.answer_id + " names " + *step.interpretation_id +
                      " outside the space of question " + trace.question_id);
    }
  }
  return it->second;
}

bool addresses(const TraceStep& step, const Ontology& ontology, AddressingPolicy policy) {
  if (!step.interpretation_id || !ontology.is_eligible(step.act_id)) return false;
  if (policy == AddressingPolicy::AnswerFamilyOnly) {
    return ontology.family_token(step.act_id) == "AQ";
  }
  return true;
}

nlohmann::ordered_json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::set<std::string> addressed_interpretations(const DiscoTrace& trace, const Ontology& ontology,
                                                AddressingPolicy policy) {
  std::set<std::string> out;
  for (const auto& step : trace.steps) {
    if (addresses(step, ontology, policy)) out.insert(*step.interpretation_id);
  }
  return out;
}

InterpretationMetricsReport interpretation_metrics(const std::vector<DiscoTrace>& traces,
                                                   const SpaceMap& spaces,
                                                   const Ontology& ontology,
                                                   AddressingPolicy policy) {
  InterpretationMetricsReport report;
  std::map<std::string, std::size_t> space_sizes;
  std::vector<double> coverages, addressed_counts, eligible_counts, matched_counts, dedications;

  for (const auto& trace : traces) {
    const auto& space = space_for(spaces, trace);
    space_sizes[trace.question_id] = space.size();

    AnswerInterpretationMetrics m;
    m.answer_id = trace.answer_id;
    m.question_id = trace.question_id;
    m.space_size = space.size();
    std::map<std::string, std::size_t> per_id;
    for (const auto& step : trace.steps) {
      if (!ontology.is_eligible(step.act_id)) continue;
      ++m.eligible;
      if (step.interpretation_id) ++m.matched;
      if (addresses(step, ontology, policy)) ++per_id[*step.interpretation_id];
    }
    for (const auto& [id, count] : per_id) {
      m.addressed.insert(id);
      const double d = static_cast<double>(count) / static_cast<double>(m.eligible);
      m.dedication[id] = d;
      dedications.push_back(d);
    }
    if (m.space_size >= 2) {
      m.coverage = static_cast<double>(m.addressed.size()) / static_cast<double>(m.space_size);
      coverages.push_back(*m.coverage);
    }
    report.eligible_segments += m.eligible;
    report.unmatched_segments += m.eligible - m.matched;
    addressed_counts.push_back(static_cast<double>(m.addressed.size()));
    eligible_counts.push_back(static_cast<double>(m.eligible));
    matched_counts.push_back(static_cast<double>(m.matched));
    report.answers.push_back(std::move(m));
  }

  if (report.eligible_segments > 0) {
    report.unmatched_rate = static_cast<double>(report.unmatched_segments) /
                            static_cast<double>(report.eligible_segments);
  }
  std::vector<double> sizes;
  for (const auto& [q, size] : space_sizes) sizes.push_back(static_cast<double>(size));
  report.questions = sizes.size();
  const auto s = mean_sd(sizes);
  report.mean_space_size = s.mean;
  report.sd_space_size = s.sd;
  const auto c = mean_sd(coverages);
  report.coverage_answers = coverages.size();
  report.mean_coverage = c.mean;
  report.sd_coverage = c.sd;
  const auto a = mean_sd(addressed_counts);
  report.mean_addressed = a.mean;
  report.sd_addressed = a.sd;
  report.mean_eligible = mean_sd(eligible_counts).mean;
  report.mean_matched = mean_sd(matched_counts).mean;
  report.mean_dedication = mean_sd(dedications).mean;
  return report;
}

nlohmann::ordered_json InterpretationMetricsReport::to_json() const {
  nlohmann::ordered_json j;
  j["answers_count"] = answers.size();
  j["questions"] = questions;
  j["eligible_segments"] = eligible_segments;
  j["unmatched_segments"] = unmatched_segments;
  j["unmatched_rate"] = unmatched_rate;
  j["mean_space_size"] = mean_space_size;
  j["sd_space_size"] = sd_space_size;
  j["coverage_answers"] = coverage_answers;
  j["mean_coverage"] = mean_coverage;
  j["sd_coverage"] = sd_coverage;
  j["mean_addressed"] = mean_addressed;
  j["sd_addressed"] = sd_addressed;
  j["mean_eligible"] = mean_eligible;
  j["mean_matched"] = mean_matched;
  j["mean_dedication"] = mean_dedication;
  j["answers"] = nlohmann::ordered_json::array();
  for (const auto& m : answers) {
    nlohmann::ordered_json row;
    row["answer_id"] = m.answer_id;
    row["question_id"] = m.question_id;
    row["space_size"] = m.space_size;
    row["eligible"] = m.eligible;
    row["matched"] = m.matched;
    row["addressed"] = m.addressed;
    row["coverage"] = optional_number(m.coverage);
    row["dedication"] = m.dedication;
    j["answers"].push_back(std::move(row));
  }
  return j;
}

std::string InterpretationMetricsReport::answers_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "answer_id,question_id,space_size,eligible,matched,addressed,coverage\n";
  for (const auto& m : answers) {
    out << m.answer_id << ',' << m.question_id << ',' << m.space_size << ',' << m.eligible << ','
        << m.matched << ',' << m.addressed.size() << ',';
    if (m.coverage) out << *m.coverage;
    out << '\n';
  }
  return out.str();
}

OveransweringReport overanswering_bins(const std::vector<DiscoTrace>& human,
                                       const std::vector<DiscoTrace>& model,
                                       const SpaceMap& spaces, const Ontology& ontology,
                                       std::size_t n_bins, AddressingPolicy policy) {
  if (n_bins == 0) throw Error(ErrorCode::InvalidArgument, "n_bins must be at least 1");

  // question -> answers, each answer as its addressed set
  using Grouped = std::map<std::string, std::vector<std::set<std::string>>>;
  const auto group = [&](const std::vector<DiscoTrace>& corpus) {
    Grouped g;
    for (const auto& trace : corpus) {
      space_for(spaces, trace);
      g[trace.question_id].push_back(addressed_interpretations(trace, ontology, policy));
    }
    return g;
  };
  const Grouped h = group(human);
  const Grouped m = group(model);
  for (const auto& [q, answers] : h) {
    if (!m.count(q)) throw Error(ErrorCode::QuestionMismatch, "model corpus lacks question " + q);
  }
  for (const auto& [q, answers] : m) {
    if (!h.count(q)) throw Error(ErrorCode::QuestionMismatch, "human corpus lacks question " + q);
  }

  const auto rate = [](const std::vector<std::set<std::string>>& answers, const std::string& id) {
    std::size_t n = 0;
    for (const auto& a : answers) n += a.count(id);
    return static_cast<double>(n) / static_cast<double>(answers.size());
  };

  OveransweringReport report;
  for (const auto& [q, human_answers] : h) {
    const auto& model_answers = m.at(q);
    for (const auto& member : spaces.at(q).members) {
      report.items.push_back(
          {q, member.id, rate(human_answers, member.id), rate(model_answers, member.id)});
    }
  }

  const double width = 1.0 / static_cast<double>(n_bins);
  std::vector<double> sum_h(n_bins, 0.0), sum_m(n_bins, 0.0);
  report.bins.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    report.bins[b].lower = static_cast<double>(b) * width;
    report.bins[b].upper = b + 1 == n_bins ? 1.0 : static_cast<double>(b + 1) * width;
  }
  for (const auto& item : report.items) {
    auto b = static_cast<std::size_t>(std::floor(item.human_frequency * static_cast<double>(n_bins)));
    if (b >= n_bins) b = n_bins - 1;
    ++report.bins[b].count;
    sum_h[b] += item.human_frequency;
    sum_m[b] += item.model_probability;
  }
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (report.bins[b].count == 0) continue;
    const double n = static_cast<double>(report.bins[b].count);
    report.bins[b].mean_human_frequency = sum_h[b] / n;
    report.bins[b].mean_model_probability = sum_m[b] / n;
  }
  return report;
}

nlohmann::ordered_json OveransweringReport::to_json() const {
  nlohmann::ordered_json j;
  j["bins"] = nlohmann::ordered_json::array();
  for (const auto& b : bins) {
    nlohmann::ordered_json row;
    row["lower"] = b.lower;
    row["upper"] = b.upper;
    row["count"] = b.count;
    row["mean_human_frequency"] = optional_number(b.mean_human_frequency);
    row["mean_model_probability"] = optional_number(b.mean_model_probability);
    j["bins"].push_back(std::move(row));
  }
  j["items"] = nlohmann::ordered_json::array();
  for (const auto& i : items) {
    nlohmann::ordered_json row;
    row["question_id"] = i.question_id;
    row["interpretation_id"] = i.interpretation_id;
    row["human_frequency"] = i.human_frequency;
    row["model_probability"] = i.model_probability;
    j["items"].push_back(std::move(row));
  }
  return j;
}

std::string OveransweringReport::to_csv() const {
  std::ostringstream out;
  out.precision(10);
  out << "bin_lower,bin_upper,count,mean_human_frequency,mean_model_probability\n";
  for (const auto& b : bins) {
    out << b.lower << ',' << b.upper << ',' << b.count << ',';
    if (b.mean_human_frequency) out << *b.mean_human_frequency;
    out << ',';
    if (b.mean_model_probability) out << *b.mean_model_probability;
    out << '\n';
  }
  return out.str();
}

}  // namespace discotrace
