#include "discotrace/bigram_model.hpp"

#include <cmath>
#include <sstream>

#include "discotrace/error.hpp"

namespace discotrace {

namespace {

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Smoothing Smoothing::parse(std::string_view text) {
  if (text == "mle") return mle();
  if (text == "add_lambda" || text == "laplace") return add_lambda(1.0);
  constexpr std::string_view prefix = "add_lambda:";
  if (text.substr(0, prefix.size()) == prefix) {
    try {
      std::size_t used = 0;
      const std::string number(text.substr(prefix.size()));
      const double lambda = std::stod(number, &used);
      if (used == number.size() && lambda > 0.0 && std::isfinite(lambda)) return add_lambda(lambda);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::InvalidConfig,
              "smoothing must be mle, add_lambda or add_lambda:<positive value>, got \"" +
                  std::string(text) + "\"");
}

std::string Smoothing::to_string() const {
  if (mode == SmoothingMode::Mle) return "mle";
  return "add_lambda:" + format_double(lambda);
}

std::vector<std::string> strategy_vocabulary(const Ontology& ontology, Projection projection) {
  if (projection == Projection::Act) return ontology.act_ids();
  return {"AQ", "CQ", "SI", "RQ", "NO", std::string(kNoneAct)};
}

std::vector<TokenSequence> act_sequences(const std::vector<DiscoTrace>& traces,
                                         const Ontology& ontology, Projection projection) {
  std::vector<TokenSequence> out;
  out.reserve(traces.size());
  for (const auto& trace : traces) {
    TokenSequence seq;
    seq.reserve(trace.steps.size());
    for (const auto& step : trace.steps) {
      seq.push_back(projection == Projection::Act ? step.act_id
                                                  : ontology.family_token(step.act_id));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

BigramModel BigramModel::fit(const std::vector<TokenSequence>& corpus,
                             std::vector<std::string> vocabulary, Smoothing smoothing) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot fit a bigram model on no data");
  if (smoothing.mode == SmoothingMode::AddLambda &&
      !(smoothing.lambda > 0.0 && std::isfinite(smoothing.lambda))) {
    throw Error(ErrorCode::InvalidConfig, "add-lambda smoothing needs lambda > 0");
  }
  BigramModel model;
  model.smoothing_ = smoothing;
  model.vocabulary_ = std::move(vocabulary);
  for (std::size_t i = 0; i < model.vocabulary_.size(); ++i) {
    const auto& token = model.vocabulary_[i];
    if (token == kStartToken || token == kEndToken) {
      throw Error(ErrorCode::InvalidArgument, "vocabulary must not contain START/END");
    }
    if (!model.index_.emplace(token, i).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate vocabulary token " + token);
    }
  }
  const std::size_t dim = model.vocabulary_.size() + 1;
  model.counts_.assign(dim * dim, 0);
  model.row_totals_.assign(dim, 0);
  model.training_sequences_ = corpus.size();

  for (const auto& seq : corpus) {
    std::size_t context = 0;
    for (const auto& token : seq) {
      const std::size_t outcome = model.outcome_index(token);
      if (outcome == model.vocabulary_.size()) {
        throw Error(ErrorCode::UnknownToken, "END inside a training sequence");
      }
      ++model.counts_[context * dim + outcome];
      ++model.row_totals_[context];
      context = outcome + 1;
    }
    ++model.counts_[context * dim + model.vocabulary_.size()];
    ++model.row_totals_[context];
  }
  return model;
}

std::size_t BigramModel::context_index(std::string_view token) const {
  if (token == kStartToken) return 0;
  auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownToken, "token \"" + std::string(token) + "\" not in vocabulary");
  }
  return it->second + 1;
}

std::size_t BigramModel::outcome_index(std::string_view token) const {
  if (token == kEndToken) return vocabulary_.size();
  auto it = index_.find(std::string(token));
  if (it == index_.end()) {
    throw Error(ErrorCode::UnknownToken, "token \"" + std::string(token) + "\" not in vocabulary");
  }
  return it->second;
}

std::uint64_t BigramModel::count(std::string_view prev, std::string_view next) const {
  return counts_[context_index(prev) * outcome_count() + outcome_index(next)];
}

double BigramModel::probability(std::size_t context, std::size_t outcome) const {
  const std::size_t dim = outcome_count();
  const double c = static_cast<double>(counts_[context * dim + outcome]);
  const double total = static_cast<double>(row_totals_[context]);
  if (smoothing_.mode == SmoothingMode::Mle) return total == 0.0 ? 0.0 : c / total;
  return (c + smoothing_.lambda) / (total + smoothing_.lambda * static_cast<double>(dim));
}

double BigramModel::probability(std::string_view prev, std::string_view next) const {
  return probability(context_index(prev), outcome_index(next));
}

nlohmann::ordered_json BigramModel::to_json() const {
  nlohmann::ordered_json j;
  j["vocabulary"] = vocabulary_;
  j["smoothing"] = smoothing_.to_string();
  j["training_sequences"] = training_sequences_;
  j["transitions"] = nlohmann::ordered_json::array();
  const std::size_t dim = outcome_count();
  for (std::size_t c = 0; c < dim; ++c) {
    const std::string prev = c == 0 ? std::string(kStartToken) : vocabulary_[c - 1];
    for (std::size_t o = 0; o < dim; ++o) {
      const auto n = counts_[c * dim + o];
      if (n == 0) continue;
      nlohmann::ordered_json t;
      t["prev"] = prev;
      t["next"] = o == vocabulary_.size() ? std::string(kEndToken) : vocabulary_[o];
      t["count"] = n;
      t["probability"] = probability(c, o);
      j["transitions"].push_back(std::move(t));
    }
  }
  return j;
}

double perplexity(const BigramModel& model, const std::vector<TokenSequence>& eval,
                  Pooling pooling) {
  if (eval.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot evaluate on no data");
  double total_nll = 0.0;
  std::size_t total_transitions = 0;
  double sum_of_means = 0.0;

  for (const auto& seq : eval) {
    double nll = 0.0;
    std::size_t context = 0;
    const auto step = [&](std::size_t outcome, std::string_view prev, std::string_view next) {
      const double p = model.probability(context, outcome);
      if (!(p > 0.0)) {
        throw Error(ErrorCode::ZeroProbabilityTransition,
                    std::string(prev) + " -> " + std::string(next) + " has probability 0");
      }
      nll -= std::log(p);
    };
    std::string_view prev = kStartToken;
    for (const auto& token : seq) {
      const std::size_t outcome = model.outcome_index(token);
      step(outcome, prev, token);
      context = outcome + 1;
      prev = token;
    }
    step(model.vocabulary().size(), prev, kEndToken);

    const std::size_t transitions = seq.size() + 1;
    total_nll += nll;
    total_transitions += transitions;
    sum_of_means += nll / static_cast<double>(transitions);
  }

  if (pooling == Pooling::Answer) return std::exp(sum_of_means / static_cast<double>(eval.size()));
  return std::exp(total_nll / static_cast<double>(total_transitions));
}

PerplexityMatrix cross_perplexity_matrix(const std::vector<NamedCorpus>& corpora,
                                         const std::vector<std::string>& vocabulary,
                                         Smoothing smoothing, Pooling pooling) {
  if (corpora.empty()) throw Error(ErrorCode::EmptyCorpus, "no corpora to compare");
  PerplexityMatrix matrix;
  for (const auto& [name, sequences] : corpora) {
    if (sequences.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus " + name + " is empty");
    matrix.labels.push_back(name);
  }
  for (const auto& [train_name, train] : corpora) {
    const auto model = BigramModel::fit(train, vocabulary, smoothing);
    std::vector<double> row;
    row.reserve(corpora.size());
    for (const auto& [eval_name, eval] : corpora) row.push_back(perplexity(model, eval, pooling));
    matrix.values.push_back(std::move(row));
  }
  return matrix;
}

std::string PerplexityMatrix::to_csv() const {
  std::string out = "train\\eval";
  for (const auto& label : labels) out += "," + csv_field(label);
  out += "\n";
  for (std::size_t r = 0; r < labels.size(); ++r) {
    out += csv_field(labels[r]);
    for (double v : values[r]) out += "," + format_double(v);
    out += "\n";
  }
  return out;
}

std::string PerplexityMatrix::to_long_csv() const {
  std::string out = "train,eval,perplexity\n";
  for (std::size_t r = 0; r < labels.size(); ++r) {
    for (std::size_t c = 0; c < labels.size(); ++c) {
      out += csv_field(labels[r]) + "," + csv_field(labels[c]) + "," +
             format_double(values[r][c]) + "\n";
    }
  }
  return out;
}

nlohmann::ordered_json PerplexityMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["labels"] = labels;
  j["values"] = values;
  return j;
}

}  // namespace discotrace
