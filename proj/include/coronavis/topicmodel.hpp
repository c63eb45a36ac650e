#pragma once

// Vocabulary and TF-IDF construction, collapsed Gibbs LDA, relevance ranking
// and the intertopic-map export.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <json.hpp>

#include "coronavis/textproc.hpp"

namespace coronavis {

class EmptyVocabulary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTopicCount : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidTopic : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic; index == position
  std::unordered_map<std::string, Eigen::Index> index;
  Eigen::VectorXi document_frequency;

  Eigen::Index size() const { return static_cast<Eigen::Index>(terms.size()); }
  std::optional<Eigen::Index> find(const std::string& term) const;
};

/// Drops stopwords, terms in fewer than `min_df` documents and terms in more
/// than `max_df_fraction` of them. Throws EmptyVocabulary if nothing survives.
Vocabulary build_vocabulary(std::span<const TokenList> docs, const StopwordPolicy& policy, std::size_t min_df = 1,
                            double max_df_fraction = 1.0);

/// Documents x terms, raw counts. Out-of-vocabulary tokens are skipped.
using DocTermMatrix = Eigen::SparseMatrix<int, Eigen::RowMajor>;
using TfIdfMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

DocTermMatrix build_doc_term_matrix(std::span<const TokenList> docs, const Vocabulary& vocab);

enum class IdfVariant {
  smooth,  // ln((1 + D) / (1 + df)) + 1
  plain,   // ln(D / df)
};

Eigen::VectorXd inverse_document_frequency(const Vocabulary& vocab, Eigen::Index documents,
                                           IdfVariant variant = IdfVariant::smooth);

/// weight(d, t) = count(d, t) * idf(t); the sparsity pattern of `dtm` is kept.
TfIdfMatrix tfidf(const DocTermMatrix& dtm, const Vocabulary& vocab, IdfVariant variant = IdfVariant::smooth);

struct LdaOptions {
  int topics = 25;
  double alpha = -1.0;  // <= 0 selects 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 20200305;
  int log_every = 10;
};

struct LogLikelihoodPoint {
  int iteration = 0;
  double value = 0.0;
};

struct LdaModel {
  Eigen::MatrixXd phi;    // topics x terms
  Eigen::MatrixXd theta;  // documents x topics
  Eigen::VectorXd term_frequency;  // corpus token count per term
  Eigen::VectorXd doc_lengths;
  std::vector<std::string> terms;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  int iterations = 0;
  std::vector<LogLikelihoodPoint> log_likelihood;

  int topics() const { return static_cast<int>(phi.rows()); }
  /// Token-weighted share of each topic; sums to 1.
  Eigen::VectorXd prevalence() const;
  /// p(w), the corpus marginal used for lift.
  Eigen::VectorXd term_marginal() const;
};

/// 64-bit Mersenne Twister; uniform draws take the top 53 bits of each output
/// so the stream is identical on every standard library.
class SamplerRng {
 public:
  explicit SamplerRng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Collapsed Gibbs state over the tokens of a document-term matrix. Tokens of
/// a document are laid out term by term in column order.
class CollapsedGibbsSampler {
 public:
  CollapsedGibbsSampler(const DocTermMatrix& dtm, int topics, double alpha, double beta, std::uint64_t seed);

  void sweep();
  /// log p(w, z) under the collapsed model.
  double log_likelihood() const;
  LdaModel estimate() const;

  std::size_t token_count() const { return words_.size(); }
  /// Sum of the topic-term count table; equals token_count() after any sweep.
  long assignment_total() const { return topic_totals_.sum(); }
  const Eigen::MatrixXi& topic_term_counts() const { return topic_term_; }

 private:
  int topics_;
  Eigen::Index vocab_size_;
  double alpha_;
  double beta_;
  SamplerRng rng_;
  std::vector<int> words_;
  std::vector<int> docs_;
  std::vector<int> assignment_;
  Eigen::MatrixXi doc_topic_;   // documents x topics
  Eigen::MatrixXi topic_term_;  // topics x terms
  Eigen::VectorXi topic_totals_;
  Eigen::VectorXi doc_lengths_;
  Eigen::VectorXd weights_;
};

/// Throws InvalidTopicCount when topics < 1 or topics exceeds the token count.
LdaModel lda_fit(const DocTermMatrix& dtm, const Vocabulary& vocab, const LdaOptions& options = {});

struct RelevantTerm {
  std::string term;
  double relevance = 0.0;
  double probability = 0.0;  // p(w | topic)
  double lift = 0.0;         // p(w | topic) / p(w)
};

struct RelevanceRanking {
  int topic = 0;
  double lambda = 0.6;
  std::vector<RelevantTerm> terms;
};

/// relevance = lambda * log p(w|t) + (1 - lambda) * log(p(w|t) / p(w)),
/// descending, ties by term.
RelevanceRanking relevant_terms(const LdaModel& model, int topic, double lambda = 0.6, std::size_t n = 30);

/// Symmetric JS divergence (natural log) between rows of a row-stochastic matrix.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> jensen_shannon_matrix(
    const Eigen::MatrixBase<Derived>& distributions);

/// Classical (Torgerson) scaling of a distance matrix to `dims` coordinates.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> classical_mds(
    const Eigen::MatrixBase<Derived>& distances, int dims = 2);

inline constexpr int kTopicVisSchemaVersion = 1;

/// Versioned visualization payload: per topic prevalence, 2-D coordinates and
/// relevance rankings, plus the divergence matrix.
nlohmann::json export_topicvis(const LdaModel& model, std::span<const RelevanceRanking> rankings);

}  // namespace coronavis

#include "coronavis/detail/topic_geometry.hpp"
