#include <algorithm>
#include <cmath>

#include "coronavis/topicmodel.hpp"

namespace coronavis {

CollapsedGibbsSampler::CollapsedGibbsSampler(const DocTermMatrix& dtm, int topics, double alpha, double beta,
                                             std::uint64_t seed)
    : topics_(topics), vocab_size_(dtm.cols()), alpha_(alpha), beta_(beta), rng_(seed) {
  if (topics < 1) throw InvalidTopicCount("topic count must be at least 1");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");

  for (Eigen::Index d = 0; d < dtm.outerSize(); ++d)
    for (DocTermMatrix::InnerIterator it(dtm, d); it; ++it)
      for (int c = 0; c < it.value(); ++c) {
        docs_.push_back(static_cast<int>(d));
        words_.push_back(static_cast<int>(it.col()));
      }
  if (static_cast<std::size_t>(topics) > words_.size())
    throw InvalidTopicCount("topic count exceeds the number of tokens");

  doc_topic_ = Eigen::MatrixXi::Zero(dtm.rows(), topics);
  topic_term_ = Eigen::MatrixXi::Zero(topics, vocab_size_);
  topic_totals_ = Eigen::VectorXi::Zero(topics);
  doc_lengths_ = Eigen::VectorXi::Zero(dtm.rows());
  weights_ = Eigen::VectorXd::Zero(topics);
  assignment_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const int k = std::min(topics - 1, static_cast<int>(rng_.uniform() * topics));
    assignment_[i] = k;
    ++doc_topic_(docs_[i], k);
    ++topic_term_(k, words_[i]);
    ++topic_totals_(k);
    ++doc_lengths_(docs_[i]);
  }
}

void CollapsedGibbsSampler::sweep() {
  const double vocab_beta = static_cast<double>(vocab_size_) * beta_;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const int d = docs_[i];
    const int w = words_[i];
    int k = assignment_[i];
    --doc_topic_(d, k);
    --topic_term_(k, w);
    --topic_totals_(k);

    double total = 0.0;
    for (int t = 0; t < topics_; ++t) {
      total += (doc_topic_(d, t) + alpha_) * (topic_term_(t, w) + beta_) / (topic_totals_(t) + vocab_beta);
      weights_(t) = total;
    }
    const double u = rng_.uniform() * total;
    k = 0;
    while (k < topics_ - 1 && weights_(k) <= u) ++k;

    assignment_[i] = k;
    ++doc_topic_(d, k);
    ++topic_term_(k, w);
    ++topic_totals_(k);
  }
}

double CollapsedGibbsSampler::log_likelihood() const {
  const double v = static_cast<double>(vocab_size_);
  const double k = static_cast<double>(topics_);
  double ll = 0.0;
  ll += k * (std::lgamma(v * beta_) - v * std::lgamma(beta_));
  for (int t = 0; t < topics_; ++t) {
    for (Eigen::Index w = 0; w < vocab_size_; ++w) ll += std::lgamma(topic_term_(t, w) + beta_);
    ll -= std::lgamma(topic_totals_(t) + v * beta_);
  }
  const double docs = static_cast<double>(doc_topic_.rows());
  ll += docs * (std::lgamma(k * alpha_) - k * std::lgamma(alpha_));
  for (Eigen::Index d = 0; d < doc_topic_.rows(); ++d) {
    for (int t = 0; t < topics_; ++t) ll += std::lgamma(doc_topic_(d, t) + alpha_);
    ll -= std::lgamma(doc_lengths_(d) + k * alpha_);
  }
  return ll;
}

LdaModel CollapsedGibbsSampler::estimate() const {
  LdaModel model;
  const double v = static_cast<double>(vocab_size_);
  const double k = static_cast<double>(topics_);
  model.phi = (topic_term_.cast<double>().array() + beta_).matrix();
  for (int t = 0; t < topics_; ++t) model.phi.row(t) /= (topic_totals_(t) + v * beta_);
  model.theta = (doc_topic_.cast<double>().array() + alpha_).matrix();
  for (Eigen::Index d = 0; d < model.theta.rows(); ++d) model.theta.row(d) /= (doc_lengths_(d) + k * alpha_);
  model.term_frequency = topic_term_.cast<double>().colwise().sum().transpose();
  model.doc_lengths = doc_lengths_.cast<double>();
  model.alpha = alpha_;
  model.beta = beta_;
  return model;
}

Eigen::VectorXd LdaModel::prevalence() const {
  Eigen::VectorXd weight = theta.transpose() * doc_lengths;
  const double total = weight.sum();
  if (total > 0) weight /= total;
  return weight;
}

Eigen::VectorXd LdaModel::term_marginal() const {
  const double total = term_frequency.sum();
  return total > 0 ? Eigen::VectorXd(term_frequency / total) : term_frequency;
}

LdaModel lda_fit(const DocTermMatrix& dtm, const Vocabulary& vocab, const LdaOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  const double alpha = options.alpha > 0 ? options.alpha : 50.0 / options.topics;
  if (options.topics < 1) throw InvalidTopicCount("topic count must be at least 1");
  CollapsedGibbsSampler sampler(dtm, options.topics, alpha, options.beta, options.seed);

  std::vector<LogLikelihoodPoint> trace;
  const int every = std::max(1, options.log_every);
  for (int it = 1; it <= options.iterations; ++it) {
    sampler.sweep();
    if (it % every == 0 || it == options.iterations) trace.push_back({it, sampler.log_likelihood()});
  }
  LdaModel model = sampler.estimate();
  model.terms = vocab.terms;
  model.seed = options.seed;
  model.iterations = options.iterations;
  model.log_likelihood = std::move(trace);
  return model;
}

RelevanceRanking relevant_terms(const LdaModel& model, int topic, double lambda, std::size_t n) {
  if (topic < 0 || topic >= model.topics()) throw InvalidTopic("topic index out of range");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0, 1]");
  if (n < 1) throw std::invalid_argument("n must be at least 1");

  const Eigen::VectorXd marginal = model.term_marginal();
  const Eigen::Index v = model.phi.cols();
  std::vector<RelevantTerm> all;
  all.reserve(static_cast<std::size_t>(v));
  for (Eigen::Index w = 0; w < v; ++w) {
    const double p = model.phi(topic, w);
    const double lift = p / marginal(w);
    RelevantTerm t;
    t.term = model.terms[static_cast<std::size_t>(w)];
    t.probability = p;
    t.lift = lift;
    t.relevance = lambda * std::log(p) + (1.0 - lambda) * std::log(lift);
    all.push_back(std::move(t));
  }
  auto before = [](const RelevantTerm& a, const RelevantTerm& b) {
    return a.relevance != b.relevance ? a.relevance > b.relevance : a.term < b.term;
  };
  const std::size_t keep = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), before);
  all.resize(keep);
  return {topic, lambda, std::move(all)};
}

}  // namespace coronavis
