#include "coronavis/topicmodel.hpp"

namespace coronavis {

nlohmann::json export_topicvis(const LdaModel& model, std::span<const RelevanceRanking> rankings) {
  using nlohmann::json;
  const Eigen::MatrixXd divergence = jensen_shannon_matrix(model.phi);
  const Eigen::MatrixXd coords = classical_mds(divergence, 2);
  const Eigen::VectorXd prevalence = model.prevalence();

  json topics = json::array();
  for (int k = 0; k < model.topics(); ++k) {
    json terms = json::array();
    for (const auto& r : rankings) {
      if (r.topic != k) continue;
      for (const auto& t : r.terms)
        terms.push_back({{"term", t.term}, {"relevance", t.relevance}, {"probability", t.probability}, {"lift", t.lift}});
    }
    topics.push_back({{"topic", k},
                      {"prevalence", prevalence(k)},
                      {"x", coords(k, 0)},
                      {"y", coords(k, 1)},
                      {"terms", std::move(terms)}});
  }
  json matrix = json::array();
  for (Eigen::Index a = 0; a < divergence.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < divergence.cols(); ++b) row.push_back(divergence(a, b));
    matrix.push_back(std::move(row));
  }
  const double lambda = rankings.empty() ? 0.6 : rankings.front().lambda;
  return {{"schema", "coronavis.topicvis"},
          {"schema_version", kTopicVisSchemaVersion},
          {"topics_count", model.topics()},
          {"vocabulary_size", static_cast<std::int64_t>(model.phi.cols())},
          {"alpha", model.alpha},
          {"beta", model.beta},
          {"seed", model.seed},
          {"iterations", model.iterations},
          {"lambda", lambda},
          {"topics", std::move(topics)},
          {"divergence", std::move(matrix)}};
}

}  // namespace coronavis
